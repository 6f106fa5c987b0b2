import pytest
from hypothesis import given, settings

from condcoh.compound import Cond, Conj, Iter, canonical_key
from condcoh.dsl import context_from, elaborate, format_expr, key_of, parse, parse_formula
from condcoh.errors import AmbiguousBar, DSLSyntaxError, MissingAssessment
from condcoh.eventspace import TRUE, And, Atom, EventSpace, Not, Or

from strategies import exprs


def test_examples():
    assert parse("C|A").ast == Cond(Atom("C"), Atom("A"))
    assert parse("(B|K)|(A|H)").ast == Iter(Cond(Atom("B"), Atom("K")), Cond(Atom("A"), Atom("H")))
    e = parse("A|((C|A) && C)").ast
    assert e == Iter(Cond(Atom("A")), Conj((Cond(Atom("C"), Atom("A")), Cond(Atom("C")))))


def test_precedence():
    assert parse_formula("not A and B or C") == Or((And((Not(Atom("A")), Atom("B"))), Atom("C")))
    # "|" binds looser than "or", "&&" looser than "|"
    assert parse("A or B|C").ast == Cond(Or((Atom("A"), Atom("B"))), Atom("C"))
    assert parse("A|B && C|D").ast == Conj((Cond(Atom("A"), Atom("B")), Cond(Atom("C"), Atom("D"))))
    assert parse("A && B|C").ast == Conj((Cond(Atom("A")), Cond(Atom("B"), Atom("C"))))
    assert parse("(A|B && C) | D").ast == Iter(Conj((Cond(Atom("A"), Atom("B")), Cond(Atom("C")))), Cond(Atom("D")))
    assert parse("true").ast == Cond(TRUE)


@settings(max_examples=1000)
@given(exprs)
def test_round_trip(e):
    assert parse(format_expr(e)).ast == e


@given(exprs)
def test_keys_survive_printing(e):
    assert key_of(format_expr(e)) == canonical_key(e)


def test_key_permutation_invariance():
    assert key_of("A|H && B|K && C") == key_of("C && B|K && A|H") == key_of("B|K && C && A|H && C")


@pytest.mark.parametrize(
    "text,line,col",
    [("A|B|C", 1, 4), ("A and", 1, 6), ("(A|B", 1, 5), ("A $ B", 1, 3), ("A\n && |", 2, 5), ("", 1, 1)],
)
def test_error_positions(text, line, col):
    with pytest.raises(DSLSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}:")


def test_chained_bar_is_ambiguous():
    with pytest.raises(AmbiguousBar):
        parse("A|B|C")
    with pytest.raises(AmbiguousBar):
        parse("(A|B)|C|D")


def test_elaborate():
    s = EventSpace(["A", "C"])
    assert elaborate("C|A", s, {"C|A": "9/10"}).as_dict()["~A C"] == "9/10"
    t = elaborate("(C|A) && C", s, context_from({"C|A": "9/10", "C|A && C": "1/2"}))
    assert t.as_dict() == {"A C": "1/1", "A ~C": "0/1", "~A C": "9/10", "~A ~C": "0/1"}
    with pytest.raises(MissingAssessment) as info:
        elaborate("A|(C|A)", s, {"C|A": "1/2"})
    assert info.value.keys == ["A|(C|A)"]


def test_context_conflicts():
    with pytest.raises(ValueError):
        context_from({"A|H && B|K": "1/2", "B|K && A|H": "1/3"})
