"""Conditional random quantities as exact value tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import (
    EmptyAntecedent,
    InvalidMass,
    MissingValue,
    OutOfRangeAssessment,
    SpaceMismatch,
)
from .eventspace import TRUE, EventSpace, Formula, Not, _as_formula, format_formula

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value) -> Fraction:
    """Exact conversion of ``"n/d"``, decimal strings, ints and Fractions.

    Floats go through their shortest decimal repr, so ``0.1`` becomes 1/10.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational: {value!r}") from None
    raise TypeError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ConditionalEvent:
    consequent: Formula
    antecedent: Formula = TRUE

    def __init__(self, consequent, antecedent=TRUE):
        object.__setattr__(self, "consequent", _as_formula(consequent))
        object.__setattr__(self, "antecedent", _as_formula(antecedent))

    def __str__(self):
        if self.antecedent == TRUE:
            return format_formula(self.consequent)
        return f"{format_formula(self.consequent)}|{format_formula(self.antecedent)}"

    def negation(self) -> "ConditionalEvent":
        return ConditionalEvent(Not(self.consequent), self.antecedent)


class ValueTable:
    """Values on every constituent plus the conditioning event as a bitmask.

    Entries outside the conditioning event hold the prevision of the
    quantity, so downstream algebra needs no special void marker.
    """

    __slots__ = ("space", "values", "cond")

    def __init__(self, space: EventSpace, values: Sequence, cond: int):
        if len(values) != len(space):
            raise MissingValue(f"expected {len(space)} values, got {len(values)}")
        if cond & ~space.full:
            raise ValueError("conditioning mask outside the space")
        self.space = space
        self.values = tuple(parse_rational(v) for v in values)
        self.cond = cond

    @property
    def conditioning(self) -> Formula:
        return self.space.formula_of(self.cond)

    def __getitem__(self, cid: int) -> Fraction:
        return self.values[cid]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, ValueTable)
            and self.space == other.space
            and self.values == other.values
            and self.cond == other.cond
        )

    def __hash__(self):
        return hash((self.values, self.cond))

    def __repr__(self):
        return f"ValueTable({self.as_dict()!r}, cond={bin(self.cond)})"

    def as_dict(self) -> dict[str, str]:
        return {c.label(): format_rational(v) for c, v in zip(self.space, self.values)}

    def same_values(self, other: "ValueTable") -> bool:
        _check_space(self, other)
        return self.values == other.values

    def with_cond(self, cond: int) -> "ValueTable":
        return ValueTable(self.space, self.values, cond)

    def rows(self):
        """(constituent, value, conditioning-true) triples in id order."""
        for c, v in zip(self.space, self.values):
            yield c, v, bool(self.cond >> c.id & 1)


def _check_space(a: ValueTable, b: ValueTable):
    if a.space != b.space:
        raise SpaceMismatch("tables live in different event spaces")


def indicator(e: ConditionalEvent, x, space: EventSpace, checked: bool = True) -> ValueTable:
    """Table of ``A|H``: 1 on AH, 0 on not-A H, ``x`` off H."""
    x = parse_rational(x)
    h = space.event(e.antecedent)
    if h == 0:
        raise EmptyAntecedent(f"antecedent of {e} is impossible")
    if checked and not ZERO <= x <= ONE:
        raise OutOfRangeAssessment(f"P({e}) = {x} outside [0, 1]")
    ah = space.event(e.consequent) & h
    vals = [ONE if ah >> i & 1 else ZERO if h >> i & 1 else x for i in range(len(space))]
    return ValueTable(space, vals, h)


def make_crq(values_on_h: Mapping[int, RationalLike], h, mu, space: EventSpace) -> ValueTable:
    """``X|H``: given values on the constituents of H, ``mu`` elsewhere."""
    hm = space.event(h)
    if hm == 0:
        raise EmptyAntecedent("conditioning event is impossible")
    mu = parse_rational(mu)
    vals = []
    for i in range(len(space)):
        if hm >> i & 1:
            if i not in values_on_h:
                raise MissingValue(f"no value for constituent {space.constituents[i].label()}")
            vals.append(parse_rational(values_on_h[i]))
        else:
            vals.append(mu)
    return ValueTable(space, vals, hm)


def pointwise_combine(op: str, a: ValueTable, b=None, cond: int | None = None) -> ValueTable:
    """Constituent-wise ``add``, ``sub``, ``mul``, ``scale`` or ``complement``.

    The result's conditioning is the union of the operands' unless ``cond``
    is given.
    """
    if op == "complement":
        vals = [ONE - v for v in a.values]
        mask = a.cond
    elif op == "scale":
        k = parse_rational(b)
        vals = [k * v for v in a.values]
        mask = a.cond
    elif op in ("add", "sub", "mul"):
        if isinstance(b, ValueTable):
            _check_space(a, b)
            other, mask = b.values, a.cond | b.cond
        else:
            k = parse_rational(b)
            other, mask = [k] * len(a), a.cond
        if op == "add":
            vals = [u + v for u, v in zip(a.values, other)]
        elif op == "sub":
            vals = [u - v for u, v in zip(a.values, other)]
        else:
            vals = [u * v for u, v in zip(a.values, other)]
    else:
        raise ValueError(f"unknown operation {op!r}")
    return ValueTable(a.space, vals, mask if cond is None else cond)


def _mass_vector(mass, space: EventSpace) -> list[Fraction]:
    if isinstance(mass, Mapping):
        unknown = set(mass) - set(range(len(space)))
        if unknown:
            raise InvalidMass(f"mass on unknown constituents {sorted(unknown)}")
        vec = [parse_rational(mass.get(i, 0)) for i in range(len(space))]
    else:
        vec = [parse_rational(m) for m in mass]
        if len(vec) != len(space):
            raise InvalidMass("mass vector length differs from constituent count")
    if any(m < 0 for m in vec):
        raise InvalidMass("negative mass")
    if sum(vec) != 1:
        raise InvalidMass("mass does not sum to 1")
    return vec


def prevision_under_mass(t: ValueTable, mass) -> Fraction:
    vec = _mass_vector(mass, t.space)
    return sum((m * v for m, v in zip(vec, t.values)), ZERO)


def compare_on_disjunction(a: ValueTable, b: ValueTable, relation: str = "eq") -> bool:
    """Pointwise ``eq``/``le`` restricted to where either conditioning holds."""
    _check_space(a, b)
    mask = a.cond | b.cond
    if relation not in ("eq", "le"):
        raise ValueError(f"unknown relation {relation!r}")
    for i, (u, v) in enumerate(zip(a.values, b.values)):
        if mask >> i & 1:
            if relation == "eq" and u != v:
                return False
            if relation == "le" and u > v:
                return False
    return True
