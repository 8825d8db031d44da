import pytest
from hypothesis import given, settings

from modalk.formula import BOT, TOP, And, Box, Dia, Not, Or, Var, parse, to_nnf
from modalk.kripke import model_check
from modalk.measures import NotNNFError, diamond_dimension, f_v, modality_depth
from modalk.solvers import (
    Budget, Verdict, build_table, layered_model, sat_brute, sat_depth, sat_diamond,
    sat_width, skeleton_size, solve, valid,
)
from strategies import formulas

p, q = Var("p"), Var("q")
SAT, UNSAT, UNKNOWN = Verdict.SAT, Verdict.UNSAT, Verdict.UNKNOWN
CONTRA = And(Dia(p), Box(Not(p)))


def is_skeleton_subtree(model, root, k):
    """The witness is a tree below ``root`` whose depth-``j`` nodes have at most ``k - j`` children."""
    depth = {root: 0}
    order = [root]
    for s in order:
        kids = model.successors(s)
        if len(kids) > k - depth[s]:
            return False
        for t in kids:
            if t in depth:
                return False
            depth[t] = depth[s] + 1
            order.append(t)
    return len(order) == len(model)


def test_brute_examples():
    r = sat_brute(Box(BOT), 1)
    assert r.verdict is SAT and len(r.witness.model) == 1
    assert sat_brute(CONTRA, 3).verdict is UNKNOWN
    r = sat_brute(And(Dia(p), Dia(Not(p))), 3)
    assert r.verdict is SAT and len(r.witness.model) <= 3


def test_brute_unsat_only_with_complete_bound():
    r = sat_brute(And(p, Not(p)), 1, complete_bound=1)
    assert r.verdict is UNSAT and r.stats["complete"]
    assert sat_brute(And(p, Not(p)), 1).verdict is UNKNOWN


def test_brute_budget_gives_unknown():
    r = sat_brute(CONTRA, 3, Budget(max_candidates=10))
    assert r.verdict is UNKNOWN and r.stats["candidates"] == 10


def test_depth_examples():
    r = sat_depth(CONTRA)
    assert r.verdict is UNSAT
    assert r.stats["root_candidates"] == f_v(1, 1) == 8
    assert r.stats["candidates"] == 8
    assert sat_depth(Box(p)).verdict is SAT


def test_depth_refuses_large_parameters():
    r = sat_depth(parse("<><>(p & q)"))
    assert r.verdict is UNKNOWN


def test_layered_model_shape():
    m, levels = layered_model(("p",), 2)
    assert [len(level) for level in levels] == [2, 8]
    assert len(m) == 10


def test_diamond_examples():
    r = sat_diamond(And(Dia(Box(BOT)), Box(Box(BOT))))
    assert r.verdict is SAT
    assert len(r.witness.model) == 2
    r = sat_diamond(Or(Dia(p), p))
    assert r.verdict is SAT and len(r.witness.model) <= 2
    r = sat_diamond(And(p, Box(q)))
    assert r.stats["dd"] == 0 and r.stats["candidates"] <= 4


def test_diamond_needs_nnf():
    with pytest.raises(NotNNFError):
        sat_diamond(Not(Box(p)))


def test_skeleton_sizes():
    assert [skeleton_size(k) for k in range(5)] == [1, 2, 5, 16, 65]


@pytest.mark.parametrize("text, expected", [
    ("[]false", SAT), ("<>p & []~p", UNSAT), ("<>p & <>~p", SAT), ("p & ~p", UNSAT),
    ("[]p & <>q & <>~p", UNSAT), ("<>(p & []false) & []<>true", UNSAT),
    ("<><>p & []([]~p | q)", SAT),
])
@pytest.mark.parametrize("algo", ["width", "depth", "diamond"])
def test_small_cases_all_solvers(text, expected, algo):
    r = solve(parse(text), algo, Budget(seconds=None))
    if r.verdict is UNKNOWN:
        pytest.skip("outside this solver's envelope")
    assert r.verdict is expected


def test_width_table_invariants():
    g, table, _ = build_table(parse("[](<>p | []q) & <>~q"))
    d = len(table.levels) - 1
    v = len(table.letters)
    assert not table.levels[d]
    assert all(table.rows[d])
    for i, row in enumerate(table.rows):
        assert len(row) == 1 << (v + len(table.levels[i]))


def test_width_budget_gives_unknown():
    r = sat_width(parse("<>p & <>q & <>r & []s"), Budget(max_cells=4))
    assert r.verdict is UNKNOWN and "reason" in r.stats


def test_width_witness():
    f = parse("<>p & <>~p & [](q | <>q)")
    r = sat_width(f, witness=True)
    assert r.verdict is SAT and model_check(r.witness.model, r.witness.root, f)
    assert sat_width(f).witness is None


@pytest.mark.parametrize("text", ["p | ~p", "[](p | ~p)", "[]p | <>~p"])
def test_valid_examples(text):
    for algo in ("width", "depth", "diamond"):
        assert valid(parse(text), algo).verdict is Verdict.VALID


def test_invalid_has_countermodel():
    f = parse("<>p -> p")
    r = valid(f, "width", witness=True)
    assert r.verdict is Verdict.INVALID
    assert not model_check(r.witness.model, r.witness.root, f)
    assert valid(f, "diamond").stats["dbox"] == 1


def test_result_json_shape():
    r = sat_depth(Dia(p))
    doc = r.to_dict()
    assert doc["verdict"] == "SAT" and doc["witness"]["root"] == 0
    assert {"states", "relation"} <= set(doc["witness"])


small = formulas(("p", "q"), max_leaves=7).filter(lambda f: modality_depth(f) <= 2)


@settings(max_examples=150, deadline=None)
@given(small)
def test_width_agrees_with_brute_and_diamond(f):
    w = sat_width(f, witness=True)
    assert w.verdict in (SAT, UNSAT)
    if w.verdict is SAT:
        assert model_check(w.witness.model, 0, f)
    b = sat_brute(f, 3, Budget(max_candidates=1 << 12))
    if b.verdict is SAT:
        assert w.verdict is SAT
    g = to_nnf(f)
    if diamond_dimension(g) <= 3:
        d = sat_diamond(g, Budget(max_candidates=1 << 20))
        if d.verdict is not UNKNOWN:
            assert d.verdict is w.verdict


@settings(max_examples=150, deadline=None)
@given(formulas(("p",), max_leaves=6).filter(lambda f: modality_depth(f) <= 2))
def test_depth_agrees_and_respects_layer_bound(f):
    r = sat_depth(f)
    assert r.verdict is sat_width(f).verdict
    if r.verdict is SAT:
        d = modality_depth(f)
        assert len(r.witness.model) <= 1 + sum(f_v(1, i) for i in range(d))


@settings(max_examples=150, deadline=None)
@given(formulas(("p", "q"), max_leaves=8))
def test_diamond_witness_is_skeleton_subtree(f):
    g = to_nnf(f)
    k = diamond_dimension(g)
    if k > 3:
        return
    r = sat_diamond(g)
    if r.verdict is SAT:
        assert model_check(r.witness.model, r.witness.root, g)
        assert is_skeleton_subtree(r.witness.model, r.witness.root, k)
        assert len(r.witness.model) <= skeleton_size(k)


@settings(max_examples=50, deadline=None)
@given(small)
def test_candidate_counts_are_deterministic(f):
    assert sat_width(f).stats["candidates"] == sat_width(f).stats["candidates"]
    g = to_nnf(f)
    if diamond_dimension(g) <= 2:
        assert sat_diamond(g).stats["candidates"] == sat_diamond(g).stats["candidates"]
