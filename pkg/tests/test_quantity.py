from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from condcoh.errors import EmptyAntecedent, InvalidMass, MissingValue, OutOfRangeAssessment
from condcoh.eventspace import EventSpace, conj, neg
from condcoh.quantity import (
    ConditionalEvent,
    compare_on_disjunction,
    format_rational,
    indicator,
    make_crq,
    parse_rational,
    pointwise_combine,
    prevision_under_mass,
)

S = EventSpace(["A", "H"])
unit = st.fractions(min_value=0, max_value=1, max_denominator=64)


@pytest.mark.parametrize(
    "text,value",
    [("3/4", F(3, 4)), ("0.1", F(1, 10)), (" 1 ", F(1)), (0.25, F(1, 4)), (2, F(2)), (F(1, 3), F(1, 3))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "abc", "", None, True])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, TypeError)):
        parse_rational(bad)


@given(st.fractions(max_denominator=10**6))
def test_wire_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_indicator_values():
    t = indicator(ConditionalEvent("A", "H"), "2/5", S)
    assert t.as_dict() == {"A H": "1/1", "A ~H": "2/5", "~A H": "0/1", "~A ~H": "2/5"}
    assert t.cond == S.event("H")
    with pytest.raises(OutOfRangeAssessment):
        indicator(ConditionalEvent("A", "H"), 2, S)
    with pytest.raises(EmptyAntecedent):
        indicator(ConditionalEvent("A", conj("H", neg("H"))), 0, S)


@given(unit)
def test_complement_is_negated_event(x):
    t = indicator(ConditionalEvent("A", "H"), x, S)
    n = indicator(ConditionalEvent(neg("A"), "H"), 1 - x, S)
    assert pointwise_combine("complement", t) == n


@given(unit, st.lists(st.integers(0, 9), min_size=4, max_size=4).filter(any))
def test_prevision_of_indicator(x, w):
    mass = [F(v, sum(w)) for v in w]
    t = indicator(ConditionalEvent("A", "H"), x, S)
    ph = mass[0] + mass[2]
    expected = mass[0] + x * (mass[1] + mass[3])
    assert prevision_under_mass(t, mass) == expected
    if ph:
        # at the coherent value the prevision reproduces itself
        xc = mass[0] / ph
        assert prevision_under_mass(indicator(ConditionalEvent("A", "H"), xc, S), mass) == xc


def test_crq_and_arithmetic():
    x = make_crq({0: 3, 2: -1}, "H", F(1, 2), S)
    assert x.values == (3, F(1, 2), -1, F(1, 2))
    y = pointwise_combine("add", x, 1)
    assert y.values == (4, F(3, 2), 0, F(3, 2))
    assert pointwise_combine("scale", x, 2).values == (6, 1, -2, 1)
    assert compare_on_disjunction(pointwise_combine("sub", x, x), make_crq({0: 0, 2: 0}, "H", 0, S))
    with pytest.raises(MissingValue):
        make_crq({0: 1}, "H", 0, S)
    with pytest.raises(ValueError):
        pointwise_combine("divide", x, x)


def test_mass_validation():
    t = indicator(ConditionalEvent("A"), 0, S)
    for bad in ([1, 0, 0], [F(1, 2)] * 4, [2, -1, 0, 0], {7: 1}):
        with pytest.raises(InvalidMass):
            prevision_under_mass(t, bad)


def test_compare_ignores_common_void():
    a = indicator(ConditionalEvent("A", "H"), F(1, 3), S)
    b = indicator(ConditionalEvent("A", "H"), F(2, 3), S)
    assert compare_on_disjunction(a, b, "eq")
    assert compare_on_disjunction(a, b, "le")
