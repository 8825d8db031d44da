"""Formula corpora and cross-checking of the solvers against each other."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor

from .formula import BOT, TOP, And, Box, Dia, Not, Or, Var, print_formula, size, to_nnf
from .kripke import model_check
from .measures import box_dimension, diamond_dimension, modality_depth
from .solvers import Budget, Verdict, sat_brute, sat_depth, sat_diamond, sat_width

# node kind -> weight for the random generator
WEIGHTS = (("var", 0.3), ("not", 0.15), ("and", 0.15), ("or", 0.15),
           ("box", 0.125), ("dia", 0.125))
UNARY = (Not, Box, Dia)
BINARY = (And, Or)


def letter_names(v: int) -> list:
    return ["p", "q", "r"][:v] if v <= 3 else [f"p{i}" for i in range(1, v + 1)]


def random_formula(rng: random.Random, v: int, max_depth: int):
    """Draw node kinds with fixed weights; at the depth cap only letters are drawn."""
    names = letter_names(v) or ["p"]
    kinds = [k for k, _ in WEIGHTS]
    weights = [w for _, w in WEIGHTS]

    def go(depth):
        kind = "var" if depth >= max_depth else rng.choices(kinds, weights)[0]
        if kind == "var":
            return Var(rng.choice(names))
        if kind == "not":
            return Not(go(depth + 1))
        if kind == "box":
            return Box(go(depth + 1))
        if kind == "dia":
            return Dia(go(depth + 1))
        left = go(depth + 1)
        right = go(depth + 1)
        return And(left, right) if kind == "and" else Or(left, right)

    return go(0)


def enumerate_formulas(v: int, size_max: int, constants: bool = True):
    """Every formula over ``v`` letters with at most ``size_max`` nodes, by size."""
    atoms = [Var(n) for n in letter_names(v)] + ([TOP, BOT] if constants else [])
    by_size = {1: atoms}
    for n in range(2, size_max + 1):
        level = [op(c) for op in UNARY for c in by_size[n - 1]]
        for left_size in range(1, n - 1):
            right_size = n - 1 - left_size
            for op in BINARY:
                level.extend(op(a, b) for a in by_size[left_size] for b in by_size[right_size])
        by_size[n] = level
    for n in range(1, size_max + 1):
        yield from by_size[n]


def check_formula(f, brute_states=4, brute_budget=1 << 14, dd_max=3, budget=None):
    """Run every applicable solver on ``f``; returns a per-formula record."""
    budget = budget or Budget(seconds=None)
    nnf = to_nnf(f)
    results = {
        "depth": sat_depth(f, budget),
        "width": sat_width(f, budget),
    }
    if diamond_dimension(nnf) <= dd_max:
        results["diamond"] = sat_diamond(nnf, budget)
    results["brute"] = sat_brute(
        f, brute_states, Budget(max_candidates=brute_budget, seconds=None)
    )
    verdicts = {k: r.verdict.value for k, r in results.items()}
    decided = {verdicts[k] for k in ("depth", "width", "diamond")
               if k in verdicts and verdicts[k] != "UNKNOWN"}
    problems = []
    if len(decided) > 1:
        problems.append("complete solvers disagree")
    if verdicts["brute"] == "SAT" and "UNSAT" in decided:
        problems.append("brute force found a model for an UNSAT verdict")
    for name, r in results.items():
        if r.verdict is Verdict.SAT and r.witness is not None:
            if not model_check(r.witness.model, r.witness.root, f):
                problems.append(f"{name} witness fails model checking")
    skipped = [k for k in ("depth", "width", "diamond")
               if verdicts.get(k) == "UNKNOWN"]
    return {
        "formula": print_formula(f),
        "verdicts": verdicts,
        "problems": problems,
        "skipped": skipped,
    }


def _check_batch(args):
    texts, opts = args
    from .formula import parse
    return [check_formula(parse(t), **opts) for t in texts]


def run_corpus(v=1, md_max=2, size_max=7, count=None, seed=0, duality=1000,
               jobs=1, brute_states=4, brute_budget=1 << 14):
    """Cross-validate solvers over a corpus; returns a JSON-ready report.

    ``count=None`` enumerates exhaustively, otherwise ``count`` formulas are
    drawn with ``seed``. The report contains no timings so that equal
    parameters give byte-identical output.
    """
    if count is None:
        formulas = [f for f in enumerate_formulas(v, size_max)
                    if modality_depth(f) <= md_max]
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        formulas = []
        attempts = 0
        while len(formulas) < count and attempts < 1000 * count:
            attempts += 1
            f = random_formula(rng, v, max(md_max + 2, 3))
            if size(f) <= size_max and modality_depth(f) <= md_max:
                formulas.append(f)
        mode = "random"

    opts = {"brute_states": brute_states, "brute_budget": brute_budget}
    texts = [print_formula(f) for f in formulas]
    if jobs > 1:
        chunk = max(1, len(texts) // (jobs * 8))
        batches = [(texts[i:i + chunk], opts) for i in range(0, len(texts), chunk)]
        with ProcessPoolExecutor(jobs) as pool:
            records = [r for batch in pool.map(_check_batch, batches) for r in batch]
    else:
        records = [check_formula(f, **opts) for f in formulas]

    tally = {}
    for r in records:
        for name, verdict in r["verdicts"].items():
            tally.setdefault(name, {}).setdefault(verdict, 0)
            tally[name][verdict] += 1
    disagreements = [r for r in records if r["problems"]]
    report = {
        "mode": mode,
        "params": {"v": v, "md_max": md_max, "size_max": size_max, "count": count,
                   "seed": seed, "brute_states": brute_states,
                   "brute_budget": brute_budget},
        "formulas": len(records),
        "verdicts": {k: dict(sorted(tally[k].items())) for k in sorted(tally)},
        "skips": sum(len(r["skipped"]) for r in records),
        "disagreements": disagreements,
    }
    if duality:
        report["duality"] = duality_check(duality, seed, v=max(v, 1))
    return report


def duality_check(count=1000, seed=0, v=3, max_depth=5):
    """Diamond dimension of ``f`` against box dimension of ``~f`` (both in NNF)."""
    rng = random.Random(seed)
    violations = []
    for _ in range(count):
        f = random_formula(rng, v, max_depth)
        if diamond_dimension(to_nnf(f)) != box_dimension(to_nnf(Not(f))):
            violations.append(print_formula(f))
    return {"formulas": count, "violations": violations}


def report_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
