"""Coherence checking for assessments on conditional random quantities.

An assessment is coherent when its prevision vector lies in the convex
hull of the constituent points on the disjunction of the conditioning
events, and recursively so for the items that every such convex
representation leaves with zero conditioning mass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .compound import as_node, build_table, canonical_key
from .errors import EmptyDisjunction, LengthMismatch, SpaceMismatch
from .eventspace import Constituent, EventSpace
from .quantity import ZERO, ValueTable, format_rational, parse_rational
from .ratlp import LinearSystem, optimize, solve_feasibility


@dataclass(frozen=True)
class Assessment:
    """Previsions ``previsions[i]`` assessed on quantities ``tables[i]``."""

    space: EventSpace
    exprs: tuple
    tables: tuple
    previsions: tuple

    def __post_init__(self):
        if not self.tables:
            raise ValueError("an assessment needs at least one item")
        if not len(self.exprs) == len(self.tables) == len(self.previsions):
            raise LengthMismatch("exprs, tables and previsions differ in length")
        for t in self.tables:
            if t.space != self.space:
                raise SpaceMismatch("table built over another event space")
        object.__setattr__(self, "previsions", tuple(parse_rational(p) for p in self.previsions))

    def __len__(self):
        return len(self.tables)

    def labels(self) -> list[str]:
        return [e if isinstance(e, str) else canonical_key(e) for e in self.exprs]

    def sub(self, indices: Iterable[int]) -> "Assessment":
        idx = sorted(indices)
        return Assessment(
            self.space,
            tuple(self.exprs[i] for i in idx),
            tuple(self.tables[i] for i in idx),
            tuple(self.previsions[i] for i in idx),
        )

    def extended(self, expr, table: ValueTable, value) -> "Assessment":
        return Assessment(
            self.space,
            self.exprs + (expr,),
            self.tables + (table,),
            self.previsions + (parse_rational(value),),
        )


def assess(space: EventSpace, pairs: Sequence, ctx=None) -> Assessment:
    """Build an assessment from ``(expression, value)`` pairs.

    Tables read their parameters from ``ctx`` merged with the assessed
    values themselves.
    """
    full = {k: parse_rational(v) for k, v in (ctx or {}).items()}
    nodes = []
    for e, v in pairs:
        n = as_node(e)
        v = parse_rational(v)
        k = canonical_key(n)
        if k in full and full[k] != v:
            raise ValueError(f"conflicting values for {k}")
        full[k] = v
        nodes.append((n, v))
    tables = tuple(build_table(n, space, full) for n, _ in nodes)
    return Assessment(space, tuple(n for n, _ in nodes), tables, tuple(v for _, v in nodes))


@dataclass
class SigmaSystem:
    """Constituent points restricted to the disjunction of conditionings."""

    hn: int
    ids: list  # constituent ids inside hn, in order
    q: list  # q[k][i]: value of item i at constituent ids[k]
    mu: list
    conds: list  # conditioning mask per item

    def linear_system(self) -> LinearSystem:
        n = len(self.mu)
        rows = [([self.q[k][i] for k in range(len(self.ids))], self.mu[i]) for i in range(n)]
        rows.append(([1] * len(self.ids), 1))
        return LinearSystem(len(self.ids), eq=rows)

    def mass_objective(self, i: int) -> list[Fraction]:
        c = self.conds[i]
        return [Fraction(1) if c >> h & 1 else ZERO for h in self.ids]


def build_sigma(a: Assessment) -> SigmaSystem:
    hn = 0
    for t in a.tables:
        hn |= t.cond
    if hn == 0:
        raise EmptyDisjunction("every conditioning event is impossible")
    ids = a.space.ids(hn)
    q = []
    for h in ids:
        q.append([t.values[h] if t.cond >> h & 1 else mu for t, mu in zip(a.tables, a.previsions)])
    return SigmaSystem(hn, ids, q, list(a.previsions), [t.cond for t in a.tables])


def zero_layer(sys: SigmaSystem, items: Optional[Iterable[int]] = None, point=None) -> list[int]:
    """Indices whose conditioning mass is zero in every solution.

    ``point`` (a known solution) lets items with visible positive mass skip
    their LP.
    """
    items = range(len(sys.mu)) if items is None else items
    ls = sys.linear_system()
    out = []
    for i in items:
        obj = sys.mass_objective(i)
        if point is not None and any(o and p for o, p in zip(obj, point)):
            continue
        res = optimize(obj, "max", ls)
        if res.status == "optimal" and res.value == 0:
            out.append(i)
    return out


@dataclass
class Level:
    items: list  # indices into the top-level assessment
    feasible: bool
    point: Optional[dict] = None  # constituent id -> mass
    zero_layer: list = field(default_factory=list)

    def to_json(self):
        return {
            "items": self.items,
            "feasible": self.feasible,
            "solution": None
            if self.point is None
            else {str(k): format_rational(v) for k, v in sorted(self.point.items())},
            "zero_layer": self.zero_layer,
        }


@dataclass
class CheckReport:
    verdict: str
    trace: list
    witness: Optional[list] = None  # stakes aligned with the top-level items
    witness_items: Optional[list] = None

    @property
    def coherent(self) -> bool:
        return self.verdict == "coherent"

    def to_json(self, labels=None):
        out = {"verdict": self.verdict, "trace": [lv.to_json() for lv in self.trace]}
        if self.witness is not None:
            out["witness"] = {
                "stakes": [format_rational(s) for s in self.witness],
                "items": self.witness_items,
            }
            if labels is not None:
                out["witness"]["labels"] = [labels[i] for i in self.witness_items]
        return out


def check_coherence(a: Assessment) -> CheckReport:
    trace = []
    active = list(range(len(a)))
    while True:
        sub = a.sub(active)
        sig = build_sigma(sub)
        res = solve_feasibility(sig.linear_system())
        if res.status == "infeasible":
            trace.append(Level(list(active), False))
            y = res.certificate
            stakes = [ZERO] * len(a)
            for local, glob in enumerate(active):
                stakes[glob] = -y[local]
            report = CheckReport("incoherent", trace, stakes, list(active))
            _assert_witness(a, report)
            return report
        point = res.point
        z = zero_layer(sig, point=point)
        trace.append(
            Level(
                list(active),
                True,
                {h: p for h, p in zip(sig.ids, point) if p},
                [active[i] for i in z],
            )
        )
        if not z:
            return CheckReport("coherent", trace)
        active = [active[i] for i in z]


def is_coherent(a: Assessment) -> bool:
    return check_coherence(a).coherent


def gain(a: Assessment, stakes: Sequence, c) -> Fraction:
    """Random gain of the bets ``stakes`` at constituent ``c``."""
    if len(stakes) != len(a):
        raise LengthMismatch("one stake per item is required")
    h = c.id if isinstance(c, Constituent) else int(c)
    total = ZERO
    for s, t, mu in zip(stakes, a.tables, a.previsions):
        s = parse_rational(s)
        if s:
            total += s * (t.values[h] - mu)
    return total


def _assert_witness(a: Assessment, report: CheckReport):
    sub = a.sub(report.witness_items)
    hn = 0
    for t in sub.tables:
        hn |= t.cond
    for h in a.space.ids(hn):
        if not gain(a, report.witness, h) < 0:
            raise AssertionError("Dutch book certificate failed to verify")


def dutch_book_witness(a: Assessment) -> Optional[list]:
    """Stakes with strictly negative gain on every constituent of the
    offending sub-family's conditioning disjunction, or None."""
    return check_coherence(a).witness
