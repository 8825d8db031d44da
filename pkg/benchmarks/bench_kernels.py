"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends, results are checked for equality and
the best-of-N wall time is reported.
"""

import argparse
import random
import time
from contextlib import contextmanager

from modalk import kernels
from modalk.formula import parse
from modalk.reduction import CnfInstance, encode
from modalk.solvers import sat_brute, sat_diamond, sat_width


@contextmanager
def backend(name):
    saved = kernels.c
    if name == "python":
        kernels.c = None
    try:
        yield
    finally:
        kernels.c = saved


def workloads():
    rng = random.Random(1)
    prog = kernels.compile_formula(encode(CnfInstance(3, ((1, -2), (2, 3), (-1,)))))
    n = 60
    succ = [rng.getrandbits(n) for _ in range(n)]
    vals = [rng.getrandbits(n) for _ in prog.letters]
    eval_prog = kernels.compile_formula(parse("<>(p & []<>q) | [](~p -> <>(q & r))"))
    sigs = [rng.getrandbits(len(eval_prog)) for _ in range(10)]
    members = [rng.getrandbits(14) for _ in range(300)]
    dia = parse("<>(p & <>~q) & <>(q | []p) & [](p | q)")
    return {
        f"eval_masks ({len(prog)} nodes, 60 states)": lambda: [kernels.eval_masks(prog, vals, succ) for _ in range(200)],
        "combos (10 children, <= 4)": lambda: kernels.combos(eval_prog, 3, sigs, 4),
        "brute_search (3 states)": lambda: kernels.brute_search(
            kernels.compile_formula(parse("<>p & <>~p & [](q | <>q) & []~q")), 2, 3, 1 << 30),
        "feasible (14 letters)": lambda: kernels.feasible(members, 14),
        "sat_width reduction n=1": lambda: sat_width(encode(CnfInstance(1, ((1,), (-1,))))),
        "sat_diamond dd=3": lambda: sat_diamond(dia),
        "sat_brute 3 states": lambda: sat_brute(parse("<>p & <>q & [](~p | ~q) & []<>r"), 3),
    }


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available_backends()
    if "cython" not in names:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'workload':32} " + " ".join(f"{n:>10}" for n in names) + "   speedup")
    for label, fn in workloads().items():
        times, outs = [], []
        for name in names:
            with backend(name):
                t, out = best_of(fn, args.repeat)
            times.append(t)
            outs.append(getattr(out, "verdict", out))
        assert all(o == outs[0] for o in outs), f"backends disagree on {label}"
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
        print(f"{label:32} " + " ".join(f"{t * 1e3:8.2f}ms" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
