"""Hypothesis strategies for formulas and conditional expressions."""

from hypothesis import strategies as st

from condcoh.compound import Cond, Conj, iterated_of
from condcoh.eventspace import FALSE, TRUE, And, Atom, Not, Or

ATOMS = ["A", "B", "C"]

formulas = st.recursive(
    st.sampled_from([Atom(a) for a in ATOMS] + [TRUE, FALSE]),
    lambda kids: st.one_of(
        kids.map(Not),
        st.lists(kids, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(kids, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
    ),
    max_leaves=6,
)

conds = st.builds(Cond, formulas, formulas)
plain = st.one_of(conds, formulas.map(Cond))


def _conj(items):
    return Conj(tuple(items))


exprs = st.recursive(
    plain,
    lambda kids: st.one_of(
        st.lists(kids, min_size=2, max_size=3).map(_conj),
        st.builds(iterated_of, kids, kids),
    ),
    max_leaves=5,
)
