import itertools

import pytest
from hypothesis import given

from condcoh.errors import CapExceeded, EmptyAntecedent, EmptySpace, UnknownAtom
from condcoh.eventspace import (
    TRUE,
    And,
    Atom,
    EventSpace,
    Not,
    Or,
    conj,
    disj,
    enumerate_constituents,
    evaluate,
    format_formula,
    gn_includes,
    implies,
    neg,
)
from condcoh.quantity import ConditionalEvent

from strategies import ATOMS, formulas

S = EventSpace(ATOMS)


def brute(f, atoms=ATOMS):
    return [env for env in (dict(zip(atoms, v)) for v in itertools.product((True, False), repeat=len(atoms))) if evaluate(f, env)]


def test_constituent_order_and_labels():
    s = EventSpace(["A", "C"])
    assert [c.label() for c in s] == ["A C", "A ~C", "~A C", "~A ~C"]
    assert len(enumerate_constituents(S)) == 8


def test_impossible_constraints_remove_worlds():
    s = EventSpace(["H", "K"], impossible=["H and K"])
    assert [c.label() for c in s] == ["H ~K", "~H K", "~H ~K"]
    assert s.event(conj("H", "K")) == 0


@given(formulas)
def test_event_mask_agrees_with_evaluation(f):
    m = S.event(f)
    assert [c.id for c in S if m >> c.id & 1] == [c.id for c in S if evaluate(f, c)]
    assert len(S.ids(m)) == len(brute(f))


@given(formulas, formulas)
def test_boolean_laws(f, g):
    assert S.event(neg(conj(f, g))) == S.event(disj(neg(f), neg(g)))
    assert S.event(neg(neg(f))) == S.event(f)
    assert S.event(conj(f, g)) == S.event(f) & S.event(g)
    assert implies(conj(f, g), f, S)


@given(formulas)
def test_formula_of_round_trip(f):
    m = S.event(f)
    assert S.event(S.formula_of(m)) == m


def test_format_precedence():
    f = And((Or((Atom("A"), Atom("B"))), Not(Atom("C"))))
    assert format_formula(f) == "(A or B) and not C"
    assert str(Or((Atom("A"), And((Atom("B"), Atom("C")))))) == "A or B and C"


def test_errors():
    with pytest.raises(CapExceeded):
        EventSpace([f"X{i}" for i in range(5)], cap=4)
    with pytest.raises(UnknownAtom):
        EventSpace(["A"], impossible=["Z"])
    with pytest.raises(EmptySpace):
        EventSpace(["A"], impossible=["A", "not A"])
    with pytest.raises(ValueError):
        EventSpace(["and"])
    with pytest.raises(UnknownAtom):
        S.event(Atom("Q"))


def test_generalized_inclusion():
    s = EventSpace(["A", "H"])
    # A|H is included in A or not H (as a conditional on true)
    assert gn_includes(ConditionalEvent("A", "H"), ConditionalEvent(disj("A", neg("H")), TRUE), s)
    assert not gn_includes(ConditionalEvent("A", TRUE), ConditionalEvent("A", "H"), s)
    with pytest.raises(EmptyAntecedent):
        gn_includes(ConditionalEvent("A", conj("H", neg("H"))), ConditionalEvent("A"), s)
