"""Propositional event algebra over named atoms.

Formulas are immutable trees.  An :class:`EventSpace` enumerates its
constituents (possible worlds) once, at construction, and evaluates a
formula to an integer bitmask over constituent ids, so every logical
query reduces to a couple of bit operations.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapExceeded, EmptyAntecedent, EmptySpace, UnknownAtom

ATOM_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"and", "or", "not", "true", "false"})
DEFAULT_CAP = 16


class Formula:
    """Base class of the formula AST."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)

    def atoms(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def atoms(self):
        return frozenset((self.name,))

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: bool

    def atoms(self):
        return frozenset()

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    arg: Formula

    def atoms(self):
        return self.arg.atoms()

    def __repr__(self):
        return f"Not({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    args: tuple[Formula, ...]

    def atoms(self):
        return frozenset().union(*(a.atoms() for a in self.args))

    def __repr__(self):
        return f"And{self.args!r}"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    args: tuple[Formula, ...]

    def atoms(self):
        return frozenset().union(*(a.atoms() for a in self.args))

    def __repr__(self):
        return f"Or{self.args!r}"


TRUE = Const(True)
FALSE = Const(False)


def _as_formula(f) -> Formula:
    if isinstance(f, Formula):
        return f
    if isinstance(f, str):
        if f in ("true", "false"):
            return Const(f == "true")
        if ATOM_PATTERN.fullmatch(f):
            return Atom(f)
        from .dsl import parse_formula  # text such as "A and not B"

        return parse_formula(f)
    if isinstance(f, bool):
        return Const(f)
    raise TypeError(f"not a formula: {f!r}")


def neg(f) -> Formula:
    return Not(_as_formula(f))


def conj(*fs) -> Formula:
    fs = tuple(_as_formula(f) for f in fs)
    if not fs:
        return TRUE
    return fs[0] if len(fs) == 1 else And(fs)


def disj(*fs) -> Formula:
    fs = tuple(_as_formula(f) for f in fs)
    if not fs:
        return FALSE
    return fs[0] if len(fs) == 1 else Or(fs)


_PREC = {Or: 1, And: 2, Not: 3, Atom: 4, Const: 4}


def format_formula(f: Formula) -> str:
    """Render with minimal parentheses; nested same-operator nodes keep theirs
    so that parsing the output rebuilds the identical tree."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        if _PREC[type(f.arg)] < _PREC[Not]:
            inner = f"({inner})"
        return f"not {inner}"
    word = " and " if isinstance(f, And) else " or "
    parts = []
    for a in f.args:
        s = format_formula(a)
        if _PREC[type(a)] <= _PREC[type(f)]:
            s = f"({s})"
        parts.append(s)
    return word.join(parts)


@dataclass(frozen=True)
class Constituent:
    id: int
    atoms: tuple[str, ...] = field(repr=False)
    values: tuple[bool, ...]

    @property
    def assignment(self) -> dict[str, bool]:
        return dict(zip(self.atoms, self.values))

    def label(self) -> str:
        return " ".join(a if v else "~" + a for a, v in zip(self.atoms, self.values))


class EventSpace:
    """Atoms plus impossibility constraints; constituents are the truth
    assignments that make every ``impossible`` formula false, numbered in
    lexicographic order of the declared atoms with ``True`` first."""

    def __init__(self, atoms: Sequence[str], impossible: Iterable = (), cap: int = DEFAULT_CAP):
        atoms = tuple(atoms)
        for a in atoms:
            if not isinstance(a, str) or not ATOM_PATTERN.match(a) or a in RESERVED:
                raise ValueError(f"invalid atom name {a!r}")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom names must be unique")
        if len(atoms) > cap:
            raise CapExceeded(f"{len(atoms)} atoms exceed the cap of {cap}")
        self.atoms = atoms
        self.cap = cap
        self.impossible = tuple(_as_formula(f) for f in impossible)
        index = {a: i for i, a in enumerate(atoms)}
        for f in self.impossible:
            for name in f.atoms():
                if name not in index:
                    raise UnknownAtom(name)

        rows = []
        for values in itertools.product((True, False), repeat=len(atoms)):
            env = dict(zip(atoms, values))
            if not any(_eval(f, env) for f in self.impossible):
                rows.append(values)
        if not rows:
            raise EmptySpace("no constituent satisfies the constraints")
        self.constituents = tuple(Constituent(i, atoms, v) for i, v in enumerate(rows))
        self.full = (1 << len(rows)) - 1
        self._atom_mask = {}
        for j, a in enumerate(atoms):
            m = 0
            for i, v in enumerate(rows):
                if v[j]:
                    m |= 1 << i
            self._atom_mask[a] = m
        self._cache: dict[Formula, int] = {}

    def __len__(self):
        return len(self.constituents)

    def __iter__(self) -> Iterator[Constituent]:
        return iter(self.constituents)

    def __repr__(self):
        return f"EventSpace({list(self.atoms)!r}, impossible={[str(f) for f in self.impossible]!r})"

    def __eq__(self, other):
        return (
            isinstance(other, EventSpace)
            and self.atoms == other.atoms
            and self.impossible == other.impossible
        )

    def __hash__(self):
        return hash((self.atoms, self.impossible))

    def event(self, f) -> int:
        """Bitmask of the constituents where ``f`` is true."""
        f = _as_formula(f)
        try:
            return self._cache[f]
        except KeyError:
            pass
        if isinstance(f, Atom):
            try:
                m = self._atom_mask[f.name]
            except KeyError:
                raise UnknownAtom(f.name) from None
        elif isinstance(f, Const):
            m = self.full if f.value else 0
        elif isinstance(f, Not):
            m = self.full ^ self.event(f.arg)
        elif isinstance(f, And):
            m = self.full
            for a in f.args:
                m &= self.event(a)
        elif isinstance(f, Or):
            m = 0
            for a in f.args:
                m |= self.event(a)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._cache[f] = m
        return m

    def ids(self, mask: int) -> list[int]:
        return [i for i in range(len(self.constituents)) if mask >> i & 1]

    def is_empty(self, f) -> bool:
        return self.event(f) == 0

    def formula_of(self, mask: int) -> Formula:
        """A formula whose event is ``mask`` (a disjunction of minterms)."""
        if mask == self.full:
            return TRUE
        if mask == 0:
            return FALSE
        minterms = []
        for i in self.ids(mask):
            c = self.constituents[i]
            minterms.append(conj(*(Atom(a) if v else Not(Atom(a)) for a, v in zip(c.atoms, c.values))))
        return disj(*minterms)


def _eval(f: Formula, env: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return env[f.name]
        except KeyError:
            raise UnknownAtom(f.name) from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not _eval(f.arg, env)
    if isinstance(f, And):
        return all(_eval(a, env) for a in f.args)
    if isinstance(f, Or):
        return any(_eval(a, env) for a in f.args)
    raise TypeError(f"not a formula: {f!r}")


def enumerate_constituents(space: EventSpace) -> tuple[Constituent, ...]:
    return space.constituents


def evaluate(f, c: Constituent | Mapping[str, bool]) -> bool:
    """Truth value of ``f`` under a constituent or a plain assignment."""
    env = c.assignment if isinstance(c, Constituent) else c
    return _eval(_as_formula(f), env)


def implies(f, g, space: EventSpace) -> bool:
    return space.event(f) & ~space.event(g) == 0


def gn_includes(e1, e2, space: EventSpace) -> bool:
    """Goodman-Nguyen inclusion of conditional events: ``AH`` implies ``BK``
    and ``not-B K`` implies ``not-A H``."""
    a, h = space.event(e1.consequent), space.event(e1.antecedent)
    b, k = space.event(e2.consequent), space.event(e2.antecedent)
    if h == 0 or k == 0:
        raise EmptyAntecedent("conditional event with impossible antecedent")
    full = space.full
    ah, bk = a & h, b & k
    nbk, nah = (full ^ b) & k, (full ^ a) & h
    return ah & ~bk == 0 and nbk & ~nah == 0
