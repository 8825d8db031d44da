"""Hypothesis strategies for formulas and Kripke models."""

from hypothesis import strategies as st

from modalk.formula import BOT, TOP, And, Box, Dia, Not, Or, Var
from modalk.kripke import KripkeModel


def formulas(letters=("p", "q"), max_leaves=12, constants=True):
    atoms = [Var(n) for n in letters] + ([TOP, BOT] if constants else [])
    return st.recursive(
        st.sampled_from(atoms),
        lambda kids: st.one_of(
            st.builds(Not, kids), st.builds(Box, kids), st.builds(Dia, kids),
            st.builds(And, kids, kids), st.builds(Or, kids, kids),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def models(draw, letters=("p", "q"), max_states=5):
    n = draw(st.integers(1, max_states))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    valuation = {
        s: {name: draw(st.booleans()) for name in letters} for s in range(n)
    }
    return KripkeModel(range(n), edges, valuation)


def random_cnf(rng, n_max=3, m_max=3):
    """Uniform n and m, clause width uniform in 1..n over distinct variables, fair signs."""
    from modalk.reduction import CnfInstance

    n = rng.randint(1, n_max)
    clauses = []
    for _ in range(rng.randint(1, m_max)):
        picked = rng.sample(range(1, n + 1), rng.randint(1, n))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in picked))
    return CnfInstance(n, tuple(clauses))


def satisfiable_cnfs(seed, count, n_max=3, m_max=3):
    import random

    from modalk.reduction import brute_prop

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cnf = random_cnf(rng, n_max, m_max)
        assignment = brute_prop(cnf)
        if assignment is not None:
            out.append((cnf, assignment))
    return out
