"""Command-line front end: ``modalk measure|solve|check|reduce|corpus``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .formula import ParseError, parse, print_formula
from .kripke import ModelError, model_check, model_from_dict
from .measures import measure_all
from .solvers import Algo, Budget, Verdict, solve, valid

EXIT_CODES = {
    Verdict.SAT: 0, Verdict.UNSAT: 1, Verdict.UNKNOWN: 3,
    Verdict.VALID: 0, Verdict.INVALID: 1,
}
EXIT_USAGE = 2


def _read_formula(args):
    if args.file:
        text = Path(args.file).read_text()
    elif args.formula is not None:
        text = args.formula
    else:
        raise SystemExit("error: give a formula or --file")
    return parse(text)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_measure(args) -> int:
    print(measure_all(_read_formula(args)).to_json())
    return 0


def cmd_solve(args) -> int:
    f = _read_formula(args)
    budget = Budget(max_states=args.max_states, seconds=args.budget_seconds)
    if args.max_candidates is not None:
        budget.max_candidates = args.max_candidates
    run = valid if args.valid else solve
    res = run(f, args.algo, budget, max_states=args.max_states,
              witness=args.witness or bool(args.out))
    print(res.verdict.value)
    if args.json:
        print(res.to_json())
    if res.witness is not None and res.witness.model is not None:
        doc = json.dumps(res.witness.to_dict(), indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(doc)
        elif args.witness:
            sys.stdout.write(doc)
    return EXIT_CODES[res.verdict]


def cmd_check(args) -> int:
    try:
        doc = json.loads(Path(args.model).read_bytes())
        # witness files carry their root next to the model
        file_root = doc.pop("root", 0) if isinstance(doc, dict) else 0
        model = model_from_dict(doc)
    except (OSError, ModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    root = file_root if args.root is None else args.root
    if not isinstance(root, int):
        print("error: root must be a state id", file=sys.stderr)
        return EXIT_USAGE
    if not 0 <= root < len(model):
        print(f"error: root {root} is not a state of the model", file=sys.stderr)
        return EXIT_USAGE
    ok = model_check(model, root, _read_formula(args))
    print("true" if ok else "false")
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    from .kripke import save_model
    from .reduction import DimacsError, brute_prop, depth_bound, encode, parse_dimacs, witness_model

    try:
        cnf = parse_dimacs(Path(args.dimacs).read_text())
    except (OSError, DimacsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    phi = encode(cnf)
    report = measure_all(phi)
    h, bound = depth_bound(cnf.num_vars)
    doc = {
        "formula": print_formula(phi),
        "measures": report.to_dict(),
        "certificate": {"n": cnf.num_vars, "h": h, "bound": bound, "md": report.md,
                        "holds": report.md <= bound},
    }
    if args.witness:
        assignment = brute_prop(cnf)
        if assignment is None:
            print("no satisfying assignment; witness skipped", file=sys.stderr)
        else:
            w = witness_model(cnf, assignment)
            passes = model_check(w.model, w.root, phi)
            doc["witness"] = {
                "assignment": {str(i): assignment[i] for i in sorted(assignment)},
                "model": json.loads(save_model(w.model)),
                "root": w.root,
                "verified": passes,
            }
            if not passes:
                print("warning: the constructed witness fails model checking",
                      file=sys.stderr)
            if args.witness_out:
                body = dict(json.loads(save_model(w.model)), root=w.root)
                Path(args.witness_out).write_text(json.dumps(body) + "\n")
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_corpus(args) -> int:
    from .corpus import report_json, run_corpus

    report = run_corpus(
        v=args.v, md_max=args.md_max, size_max=args.size_max, count=args.count,
        seed=args.seed, duality=args.duality, jobs=args.jobs,
        brute_budget=args.brute_budget,
    )
    _emit(report_json(report), args.out)
    failed = report["disagreements"] or report.get("duality", {}).get("violations")
    summary = (f"{report['formulas']} formulas, {len(report['disagreements'])} disagreements, "
               f"{report['skips']} skips")
    print(summary, file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modalk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def formula_args(sp, positional=True):
        if positional:
            sp.add_argument("formula", nargs="?", help="formula text")
        sp.add_argument("--file", help="read the formula from a file")

    sp = sub.add_parser("measure", help="print structural measures as JSON")
    formula_args(sp)
    sp.set_defaults(run=cmd_measure)

    sp = sub.add_parser("solve", help="decide satisfiability (or validity with --valid)")
    formula_args(sp)
    sp.add_argument("--algo", choices=[a.value for a in Algo], default="width")
    sp.add_argument("--max-states", type=int, default=4)
    sp.add_argument("--max-candidates", type=int, default=None)
    sp.add_argument("--budget-seconds", type=float, default=300.0)
    sp.add_argument("--seed", type=int, default=0, help="accepted for uniformity; solvers are deterministic")
    sp.add_argument("--witness", action="store_true", help="print the witness model")
    sp.add_argument("--out", help="write the witness model JSON here")
    sp.add_argument("--valid", action="store_true", help="decide validity instead")
    sp.add_argument("--json", action="store_true", help="also print the full result JSON")
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("check", help="model-check a formula at a state")
    sp.add_argument("model", help="model JSON file")
    sp.add_argument("formula", nargs="?")
    sp.add_argument("--file")
    sp.add_argument("--root", type=int, default=None,
                    help="state to check (default: the file's root, else 0)")
    sp.set_defaults(run=cmd_check)

    sp = sub.add_parser("reduce", help="encode a DIMACS CNF into K")
    sp.add_argument("dimacs")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--witness-out", help="write the witness model JSON (checkable by 'check')")
    sp.add_argument("--out")
    sp.set_defaults(run=cmd_reduce)

    sp = sub.add_parser("corpus", help="cross-validate the solvers on a corpus")
    sp.add_argument("--v", type=int, default=1)
    sp.add_argument("--md-max", type=int, default=2)
    sp.add_argument("--size-max", type=int, default=7)
    sp.add_argument("--count", type=int, default=None, help="random sample size (default: exhaustive)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--duality", type=int, default=1000)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--brute-budget", type=int, default=1 << 14)
    sp.add_argument("--out")
    sp.set_defaults(run=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
