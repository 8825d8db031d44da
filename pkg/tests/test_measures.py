import random

import pytest
from hypothesis import given

from modalk.corpus import random_formula
from modalk.formula import BOT, And, Box, Dia, Not, Or, Var, parse, subformulas, to_nnf
from modalk.measures import (
    MeasureReport, NotNNFError, ResourceError, box_dimension, depth1_set,
    diamond_dimension, f_v, level_sets, measure_all, min_tower_height,
    modal_width, modality_depth, prop_translate, tow,
)
from modalk.reduction import numeral
from strategies import formulas

p, q = Var("p"), Var("q")


def ref_md(f):
    kids = getattr(f, "children", ())
    inner = max((ref_md(c) for c in kids), default=0)
    return inner + 1 if isinstance(f, (Box, Dia)) else inner


def ref_dim(f, modal, summed):
    """Textbook recursion, used as an oracle for the iterative implementation."""
    if isinstance(f, modal):
        return 1 + ref_dim(f.child, modal, summed)
    if isinstance(f, (Box, Dia)):
        return ref_dim(f.child, modal, summed)
    if isinstance(f, (And, Or)):
        a, b = ref_dim(f.left, modal, summed), ref_dim(f.right, modal, summed)
        return a + b if isinstance(f, summed) else max(a, b)
    return 0


@pytest.mark.parametrize("f, md", [(p, 0), (Box(BOT), 1), (numeral(5), 4)])
def test_modality_depth(f, md):
    assert modality_depth(f) == md


@pytest.mark.parametrize("f, dd", [
    (And(Dia(p), Dia(Not(p))), 2),
    (Box(Or(p, q)), 0),
    (Or(Dia(Dia(p)), Dia(q)), 2),
])
def test_diamond_dimension(f, dd):
    assert diamond_dimension(f) == dd


@pytest.mark.parametrize("f, db", [(Box(p), 1), (Or(Box(p), Box(q)), 2)])
def test_box_dimension(f, db):
    assert box_dimension(f) == db


def test_dimensions_reject_non_nnf():
    with pytest.raises(NotNNFError):
        diamond_dimension(Not(Box(p)))
    with pytest.raises(NotNNFError):
        box_dimension(Not(Box(p)))


def test_depth1_and_level_sets():
    assert depth1_set(And(Dia(p), Box(q))) == {p, q}
    assert depth1_set(p) == frozenset()
    assert depth1_set(Or(Box(p), Dia(Box(p)))) == {p, Box(p)}
    assert level_sets(And(Dia(p), Box(q))) == [{p, q}, set()]
    assert level_sets(Box(Box(p))) == [{Box(p)}, {p}, set()]


@pytest.mark.parametrize("f, expected", [
    (p, (0, [])),
    (And(Dia(p), Box(q)), (2, [2])),
    (Box(Box(p)), (1, [1, 1])),
])
def test_modal_width(f, expected):
    assert modal_width(f) == expected


def test_prop_translate():
    r = prop_translate(Or(Box(p), q))
    assert r.prop == Or(Var("q1"), q)
    assert r.fresh_map == {"q1": p}
    r = prop_translate(And(Box(p), Not(Box(p))))
    assert r.prop == And(Var("q1"), Not(Var("q1")))
    assert prop_translate(p).prop == p
    assert prop_translate(p).fresh_map == {}


def test_prop_translate_avoids_existing_names():
    r = prop_translate(And(Var("q1"), Box(p)))
    assert r.prop == And(Var("q1"), Var("q2"))


def test_growth_functions():
    assert (f_v(1, 0), f_v(1, 1), f_v(0, 2)) == (2, 8, 4)
    assert [tow(h) for h in range(5)] == [0, 1, 2, 4, 16]
    assert tow(5) == 1 << 16
    assert [min_tower_height(n) for n in (0, 1, 2, 3, 4, 5, 16, 17)] == [0, 1, 2, 3, 3, 4, 4, 5]


def test_growth_functions_refuse_huge_values():
    with pytest.raises(ResourceError):
        f_v(2, 3)
    with pytest.raises(ResourceError):
        tow(7)
    with pytest.raises(ValueError):
        f_v(-1, 0)


def test_measure_report_json():
    assert measure_all(parse("<>p & []q")).to_dict() == {
        "v": 2, "md": 1, "dd": 1, "dbox": 1, "mw": 2, "widths": [2]}
    assert measure_all(parse("p")).to_json() == (
        '{"v": 1, "md": 0, "dd": 0, "dbox": 0, "mw": 0, "widths": []}')
    r = measure_all(parse("~[]p"))
    assert r.nnf_applied and r.dd == 1 and r.dbox == 0
    assert isinstance(r, MeasureReport)


@given(formulas(("p", "q", "r")))
def test_md_matches_reference(f):
    assert modality_depth(f) == ref_md(f)


@given(formulas(("p", "q", "r")))
def test_dimensions_match_reference(f):
    g = to_nnf(f)
    assert diamond_dimension(g) == ref_dim(g, Dia, And)
    assert box_dimension(g) == ref_dim(g, Box, Or)


@given(formulas(("p", "q", "r")))
def test_duality(f):
    assert diamond_dimension(to_nnf(f)) == box_dimension(to_nnf(Not(f)))


@given(formulas(("p", "q", "r")))
def test_levels_empty_from_md_on(f):
    levels = level_sets(f)
    md = modality_depth(f)
    assert len(levels) == md + 1
    assert all(not s for s in levels[md:])
    assert all(s for s in levels[:md])


@given(formulas(("p", "q")))
def test_prop_translate_is_propositional_and_reversible(f):
    r = prop_translate(desugar := __import__("modalk").desugar_diamonds(f))
    assert not any(isinstance(x, (Box, Dia)) for x in subformulas(r.prop))
    # substituting the boxes back restores the input
    back = {Var(k): Box(v) for k, v in r.fresh_map.items()}

    def sub(g):
        if g in back:
            return back[g]
        if isinstance(g, Not):
            return Not(sub(g.child))
        if isinstance(g, (And, Or)):
            return type(g)(sub(g.left), sub(g.right))
        return g

    assert sub(r.prop) == desugar


def test_random_generator_is_seeded():
    a = [random_formula(random.Random(7), 3, 5) for _ in range(3)]
    b = [random_formula(random.Random(7), 3, 5) for _ in range(3)]
    assert a == b
