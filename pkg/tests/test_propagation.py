from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from condcoh.coherence import assess
from condcoh.dsl import parse
from condcoh.errors import IncoherentBase, IncoherentTriple, NotPConsistent, OutOfRange
from condcoh.eventspace import EventSpace
from condcoh.propagation import (
    Interval,
    ac_bounds,
    coherent_with,
    extension_interval,
    farey,
    frechet_bounds,
    iterated_coherent_set,
    p_consistent,
    p_entails,
    simplest_between,
)

AC = EventSpace(["A", "C"])
ABC = EventSpace(["A", "B", "C"])
grid = st.sampled_from([F(i, 4) for i in range(5)])


def family(space, pairs):
    return assess(space, [(parse(t).ast, v) for t, v in pairs])


def test_worked_example():
    a = family(AC, [("C", F(3, 5)), ("C|A", F(9, 10))])
    iv = extension_interval(a, parse("A").ast)
    assert iv.as_pair() == (0, F(2, 3)) and iv.exact
    assert iv.to_json() == {"lower": "0/1", "upper": "2/3", "lower_exact": True, "upper_exact": True, "tolerance": "0/1"}


@pytest.mark.parametrize(
    "space,pairs,target",
    [
        (AC, [("C", F(3, 5)), ("C|A", F(9, 10))], "A"),
        (AC, [("C|A", F(9, 10)), ("A", F(3, 10))], "A|(C|A)"),
        (AC, [("C|A", 0), ("A", F(1, 2))], "A|(C|A)"),
        (ABC, [("A|B", F(1, 2)), ("A|C", F(2, 3))], "A|B && A|C"),
    ],
)
def test_routes_agree(space, pairs, target):
    a = family(space, pairs)
    lp = extension_interval(a, parse(target).ast)
    bi = extension_interval(a, parse(target).ast, method="bisect")
    assert lp.as_pair() == bi.as_pair() and bi.exact


@settings(max_examples=60)
@given(grid, grid, st.sampled_from(["A", "A|C", "not C|A", "A and C"]))
def test_bounds_are_tight(x, y, target):
    a = family(AC, [("C", x), ("C|A", y)])
    try:
        iv = extension_interval(a, parse(target).ast)
    except IncoherentBase:
        return
    t = parse(target).ast
    assert coherent_with(a, t, iv.lower) and coherent_with(a, t, iv.upper)
    eps = F(1, 997)
    if iv.lower >= eps:
        assert not coherent_with(a, t, iv.lower - eps)
    if iv.upper + eps <= 1:
        assert not coherent_with(a, t, iv.upper + eps)


def test_incoherent_base():
    a = family(AC, [("C", F(1, 5)), ("C|A", 1), ("A", F(1, 2))])
    with pytest.raises(IncoherentBase):
        extension_interval(a, parse("A|C").ast)


def test_closed_forms():
    assert frechet_bounds(F(1, 2), F(3, 4)).as_pair() == (F(1, 4), F(1, 2))
    assert iterated_coherent_set(F(9, 10), F(1, 2), F(9, 20)).as_pair() == (F(1, 2), F(1, 2))
    assert iterated_coherent_set(0, F(1, 2), 0).as_pair() == (0, 1)
    assert ac_bounds(F(3, 5), F(9, 10)).as_pair() == (0, F(2, 3))
    assert ac_bounds(F(1, 2), F(1, 2)).as_pair() == (0, 1)
    with pytest.raises(IncoherentTriple):
        iterated_coherent_set(F(1, 2), F(1, 2), F(3, 4))
    with pytest.raises(OutOfRange):
        frechet_bounds(2, 0)


def test_entailment():
    # cut is p-valid, affirming the consequent is not
    assert p_entails([parse("B|A").ast, parse("C|A and B").ast], parse("C|A").ast, ABC)
    assert p_entails([parse("B|A").ast, parse("C|A").ast], parse("B and C|A").ast, ABC)
    assert not p_entails([parse("C").ast, parse("C|A").ast], parse("A").ast, AC)
    assert not p_consistent([parse("A").ast, parse("not A").ast], AC)
    with pytest.raises(NotPConsistent):
        p_entails([parse("A").ast, parse("not A").ast], parse("C").ast, AC)


def test_farey():
    f5 = farey(5)
    assert f5[0] == 0 and f5[-1] == 1 and len(f5) == 11 and f5 == sorted(f5)


@given(st.fractions(0, 1, max_denominator=200), st.fractions(0, 1, max_denominator=200))
def test_simplest_between(a, b):
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return
    s = simplest_between(lo, hi)
    assert lo < s < hi
    for d in range(1, s.denominator):
        assert not any(lo < F(n, d) < hi for n in range(0, d + 1))


def test_interval_membership():
    iv = Interval(F(1, 4), F(1, 2))
    assert F(1, 3) in iv and F(3, 4) not in iv and str(iv) == "[1/4, 1/2]"
    with pytest.raises(ValueError):
        Interval(1, 0)
