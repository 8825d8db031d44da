"""One test per acceptance criterion.

Each test records a ``criterion N: PASS|FAIL`` line that is printed in the
terminal summary. Criteria that cannot hold for this construction are
implemented as stated and marked as strict expected failures.
"""

import random
import time

import pytest

from modalk.corpus import duality_check, random_formula, report_json, run_corpus
from modalk.formula import And, Dia, Not, Var, print_formula, to_nnf
from modalk.kripke import check_all, model_check
from modalk.measures import (
    depth1_set, diamond_dimension, f_v, level_sets, modality_depth, tow,
)
from modalk.reduction import (
    CnfInstance, depth_bound, encode, numeral, numeral_structure, witness_model,
)
from modalk.solvers import Budget, Verdict, sat_depth, sat_diamond, sat_width, skeleton_size
from strategies import satisfiable_cnfs
from test_solvers import is_skeleton_subtree

RESULTS = {}


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def test_c01_cross_solver_agreement():
    started = time.perf_counter()
    report = run_corpus(v=1, md_max=2, size_max=7, duality=0)
    elapsed = time.perf_counter() - started
    bad = len(report["disagreements"])
    ok = bad == 0 and elapsed < 300
    record(1, ok, f"{report['formulas']} formulas, {bad} disagreements, "
                  f"{report['skips']} skips, {elapsed:.1f}s (limit 300s)")
    assert ok


def test_c02_duality():
    result = duality_check(1000, seed=0, v=3, max_depth=5)
    ok = not result["violations"]
    record(2, ok, f"dd(f) = dbox(~f) on 1000 formulas, {len(result['violations'])} violations")
    assert ok


def test_c03_levels_vanish_from_md():
    rng = random.Random(0)
    violations = 0
    for _ in range(1000):
        f = random_formula(rng, 3, 5)
        md = modality_depth(f)
        # walk the recurrence independently and continue past md
        level = depth1_set(f)
        walked = [level]
        for _ in range(md + 2):
            level = frozenset(g for psi in level for g in depth1_set(psi))
            walked.append(level)
        stored = level_sets(f)
        if any(walked[i] for i in range(md, len(walked))):
            violations += 1
        elif stored != walked[: md + 1]:
            violations += 1
    ok = violations == 0
    record(3, ok, f"|S_i| = 0 for i >= md on 1000 formulas, {violations} violations")
    assert ok


def test_c04_growth_functions():
    got = (f_v(1, 0), f_v(1, 1), f_v(0, 2), [tow(h) for h in range(5)])
    ok = got == (2, 8, 4, [0, 1, 2, 4, 16])
    record(4, ok, f"f_1(0), f_1(1), f_0(2) = {got[:3]}; tow(0..4) = {got[3]}")
    assert ok


@pytest.mark.xfail(strict=True, reason="v_3 entails v_1 and v_2, so three-variable "
                   "witnesses need x1 = x2 = x3 (see the decisions ledger)")
def test_c05_reduction_witnesses():
    started = time.perf_counter()
    passed, failures = 0, []
    for cnf, assignment in satisfiable_cnfs(seed=0, count=100):
        w = witness_model(cnf, assignment)
        if model_check(w.model, w.root, encode(cnf)):
            passed += 1
        else:
            failures.append(cnf)
    elapsed = time.perf_counter() - started
    ok = passed == 100 and elapsed < 120
    small = [c for c in failures if c.num_vars < 3]
    record(5, ok, f"{passed}/100 witnesses check, {elapsed:.1f}s; all {len(failures)} "
                  f"failures have n = 3 ({len(small)} with n < 3)")
    assert ok


def test_c06_unsat_reduction():
    started = time.perf_counter()
    r = sat_width(encode(CnfInstance(1, ((1,), (-1,)))), Budget(seconds=600))
    elapsed = time.perf_counter() - started
    ok = r.verdict is Verdict.UNSAT and elapsed < 600
    record(6, ok, f"(x1) & (~x1) -> {r.verdict.value} in {elapsed:.2f}s, "
                  f"{r.stats.get('table_cells')} table cells")
    assert ok


def test_c07_depth_certificate():
    started = time.perf_counter()
    violations = []
    for n in range(1, 65):
        md = modality_depth(encode(CnfInstance(n, ((n,),))))
        h, bound = depth_bound(n)
        if not (tow(h) >= n and md <= bound):
            violations.append(n)
    elapsed = time.perf_counter() - started
    ok = not violations and elapsed < 60
    record(7, ok, f"md <= 4 + h for n = 1..64, {len(violations)} violations, {elapsed:.2f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="numeral v_i also holds wherever a larger "
                   "numeral's bits include those of i (see the decisions ledger)")
def test_c08_numeral_fidelity():
    v0, v1 = numeral(0), numeral(1)
    structure_ok = numeral(5) == And(Dia(Dia(v1)), Dia(v0))
    m, states = numeral_structure(16)
    exact, own_root = 0, 0
    for i in range(17):
        mask = check_all(m, numeral(i))
        if mask == 1 << states[i]:
            exact += 1
        # weaker reading: in the model generated by state i, v_i holds only at the root
        sub = m.restrict(states[i])
        if check_all(sub, numeral(i)) == 1:
            own_root += 1
    ok = structure_ok and exact == 17
    record(8, ok, f"numeral(5) structure {'ok' if structure_ok else 'WRONG'}; "
                  f"{exact}/17 numerals hold only at their own state "
                  f"(each v_i alone in its generated model: {own_root}/17)")
    assert ok


def test_c09_small_model_bounds():
    rng = random.Random(0)
    depth_checked = diamond_checked = 0
    bad = []
    for _ in range(600):
        f = random_formula(rng, 1, 4)
        if modality_depth(f) <= 2:
            r = sat_depth(f)
            if r.verdict is Verdict.SAT:
                depth_checked += 1
                d = modality_depth(f)
                limit = 1 + sum(f_v(1, i) for i in range(d))
                if len(r.witness.model) > limit:
                    bad.append(("depth", print_formula(f)))
        g = to_nnf(random_formula(rng, 2, 4))
        k = diamond_dimension(g)
        if k <= 3:
            r = sat_diamond(g)
            if r.verdict is Verdict.SAT:
                diamond_checked += 1
                w = r.witness
                if not (is_skeleton_subtree(w.model, w.root, k)
                        and len(w.model) <= skeleton_size(k)):
                    bad.append(("diamond", print_formula(g)))
    ok = not bad
    record(9, ok, f"{depth_checked} depth and {diamond_checked} diamond witnesses "
                  f"within their bounds, {len(bad)} violations")
    assert ok


def test_c10_determinism():
    a = report_json(run_corpus(v=2, md_max=2, size_max=9, count=300, seed=11, duality=200))
    b = report_json(run_corpus(v=2, md_max=2, size_max=9, count=300, seed=11, duality=200))
    ok = a == b
    record(10, ok, f"two seeded corpus reports byte-identical ({len(a)} bytes)")
    assert ok
