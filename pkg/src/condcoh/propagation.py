"""Coherent extension of an assessment to one more quantity.

Two independent routes compute the set of coherent values ``t`` for a
target:

``lp``
    Exact.  The target's table is affine in its own prevision, so the
    coherence condition splits into a linear-fractional program (solved
    by the Charnes-Cooper transformation) for solutions that give the
    target positive conditioning mass, plus a recursion on the sub-family
    that can carry zero mass on it.

``bisect``
    Probes the coherence predicate on a Farey grid, brackets each endpoint
    by bisection and then snaps to the simplest rational in the bracket
    when the predicate confirms it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .coherence import Assessment, check_coherence, is_coherent
from .compound import as_cond, as_node, build_table, canonical_key
from .errors import (
    DegenerateAntecedent,
    DegenerateTarget,
    IncoherentBase,
    IncoherentTriple,
    NotPConsistent,
    OutOfRange,
)
from .eventspace import EventSpace
from .quantity import ONE, ZERO, ValueTable, format_rational, parse_rational
from .ratlp import LinearSystem, optimize, solve_feasibility

DEFAULT_TOLERANCE = Fraction(1, 2**40)


@dataclass
class Interval:
    lower: Fraction
    upper: Fraction
    lower_exact: bool = True
    upper_exact: bool = True
    tolerance: Fraction = ZERO
    pieces: list = field(default_factory=list)  # only set for a non-convex union
    diagnostic: Optional[str] = None

    def __post_init__(self):
        self.lower = parse_rational(self.lower)
        self.upper = parse_rational(self.upper)
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")

    @property
    def exact(self) -> bool:
        return self.lower_exact and self.upper_exact

    @property
    def convex(self) -> bool:
        return not self.pieces

    def __contains__(self, t) -> bool:
        t = parse_rational(t)
        if self.pieces:
            return any(lo <= t <= hi for lo, hi in self.pieces)
        return self.lower <= t <= self.upper

    def as_pair(self) -> tuple[Fraction, Fraction]:
        return self.lower, self.upper

    def to_json(self) -> dict:
        out = {
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "lower_exact": self.lower_exact,
            "upper_exact": self.upper_exact,
            "tolerance": format_rational(self.tolerance),
        }
        if self.pieces:
            out["pieces"] = [[format_rational(lo), format_rational(hi)] for lo, hi in self.pieces]
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        return out

    def __str__(self):
        lo = format_rational(self.lower) + ("" if self.lower_exact else "~")
        hi = format_rational(self.upper) + ("" if self.upper_exact else "~")
        return f"[{lo}, {hi}]"


def _merge(pieces) -> list:
    pieces = sorted(pieces)
    out = []
    for lo, hi in pieces:
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _from_pieces(pieces, note=None) -> Interval:
    pieces = _merge(pieces)
    if len(pieces) == 1:
        return Interval(pieces[0][0], pieces[0][1], diagnostic=note)
    return Interval(
        pieces[0][0],
        pieces[-1][1],
        pieces=pieces,
        diagnostic="coherent values form a union of disjoint intervals",
    )


def base_context(a: Assessment, ctx=None) -> dict:
    out = {canonical_key(e) if not isinstance(e, str) else e: p for e, p in zip(a.exprs, a.previsions)}
    for k, v in (ctx or {}).items():
        out[k] = parse_rational(v)
    return out


class _Target:
    """The target's table as a function of its own prevision ``t``."""

    def __init__(self, a: Assessment, target, ctx):
        self.node = as_node(target)
        self.key = canonical_key(self.node)
        self.space = a.space
        base = base_context(a, ctx)
        base.pop(self.key, None)
        self.base_ctx = base
        try:
            t0 = self.table(ZERO)
            t1 = self.table(ONE)
            th = self.table(Fraction(1, 2))
        except DegenerateAntecedent as exc:
            raise DegenerateTarget(str(exc)) from exc
        self.a = list(t0.values)
        self.b = [u - v for u, v in zip(t1.values, t0.values)]
        if any(w != a_ + b_ / 2 for w, a_, b_ in zip(th.values, self.a, self.b)):
            raise DegenerateTarget("target table is not affine in its prevision")
        if not t0.cond == t1.cond == th.cond:
            raise DegenerateTarget("target conditioning depends on its prevision")
        self.cond = th.cond

    def table(self, t) -> ValueTable:
        ctx = dict(self.base_ctx)
        ctx[self.key] = parse_rational(t)
        return build_table(self.node, self.space, ctx)


def _q(a: Assessment, h: int, i: int) -> Fraction:
    t = a.tables[i]
    return t.values[h] if t.cond >> h & 1 else a.previsions[i]


def _exact_set(a: Assessment, items: list, tg: _Target) -> list:
    """Coherent values of the target on top of the sub-family ``items``."""
    space = tg.space
    T = tg.cond
    hb = 0
    for i in items:
        hb |= a.tables[i].cond
    ids = space.ids(hb | T)
    if any(tg.b[h] >= 1 for h in space.ids(T)):
        raise _NeedBisection()
    pieces = []

    # target with positive conditioning mass: Charnes-Cooper program
    rows = []
    for i in items:
        mu = a.previsions[i]
        rows.append(([_q(a, h, i) - mu for h in ids], 0))
    rows.append(([ONE - tg.b[h] if T >> h & 1 else ZERO for h in ids], 1))
    ls = LinearSystem(len(ids), eq=rows)
    obj = [tg.a[h] if T >> h & 1 else ZERO for h in ids]
    lo = optimize(obj, "min", ls)
    if lo.status == "optimal":
        hi = optimize(obj, "max", ls)
        pieces.append((lo.value, hi.value))

    # target with zero mass: recurse on the items that can also carry none
    rest = [h for h in ids if not T >> h & 1]
    if rest and items:
        rows = []
        for i in items:
            mu = a.previsions[i]
            rows.append(([_q(a, h, i) - mu for h in rest], 0))
        rows.append(([1] * len(rest), 1))
        ls0 = LinearSystem(len(rest), eq=rows)
        feas = solve_feasibility(ls0)
        if feas.feasible:
            zero = []
            for i in items:
                c = a.tables[i].cond
                mobj = [ONE if c >> h & 1 else ZERO for h in rest]
                if any(m and p for m, p in zip(mobj, feas.point)):
                    continue
                if optimize(mobj, "max", ls0).value == 0:
                    zero.append(i)
            if len(zero) >= len(items):
                raise AssertionError("zero layer failed to shrink")
            pieces.extend(_exact_set(a, zero, tg))
    return _merge(pieces)


class _NeedBisection(Exception):
    pass


def extension_interval(
    a: Assessment,
    target,
    ctx=None,
    method: str = "lp",
    tolerance=DEFAULT_TOLERANCE,
    max_denominator: int = 16,
    check_base: bool = True,
) -> Interval:
    """Coherent values of the prevision of ``target`` given ``a``.

    ``ctx`` supplies any further previsions the target's table reads
    besides its own.
    """
    if check_base and not check_coherence(a).coherent:
        raise IncoherentBase("the base assessment is not coherent")
    tg = _Target(a, target, ctx)
    if method == "lp":
        try:
            pieces = _exact_set(a, list(range(len(a))), tg)
        except _NeedBisection:
            return _bisect(a, tg, parse_rational(tolerance), max_denominator)
        if not pieces:
            raise IncoherentBase("no coherent value for the target under the supplied context")
        return _from_pieces(pieces)
    if method == "bisect":
        return _bisect(a, tg, parse_rational(tolerance), max_denominator)
    raise ValueError(f"unknown method {method!r}")


def coherent_with(a: Assessment, target, t, ctx=None) -> bool:
    """Coherence of ``a`` extended by ``target`` at prevision ``t``."""
    tg = target if isinstance(target, _Target) else _Target(a, target, ctx)
    return is_coherent(a.extended(tg.node, tg.table(t), t))


def farey(n: int) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, n + 1) for p in range(0, q + 1)})


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest rational strictly between ``0 <= lo < hi``."""
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    if lo == fl:
        d = hi - fl
        return fl + Fraction(1, math.floor(1 / d) + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _bisect(a: Assessment, tg: _Target, tol: Fraction, nmax: int) -> Interval:
    pred = lambda t: coherent_with(a, tg, t)  # noqa: E731
    grid = farey(nmax)
    verdicts = [(t, pred(t)) for t in grid]
    good = [t for t, ok in verdicts if ok]
    if not good:
        raise IncoherentBase(f"no coherent value found on the denominator-{nmax} grid")
    glo, ghi = good[0], good[-1]
    note = None
    if any(not ok for t, ok in verdicts if glo <= t <= ghi):
        note = "probing found incoherent values between coherent ones"

    def refine(bad, ok):
        while abs(ok - bad) > tol:
            mid = (bad + ok) / 2
            if pred(mid):
                ok = mid
            else:
                bad = mid
        lo_, hi_ = min(bad, ok), max(bad, ok)
        cands = [simplest_between(lo_, hi_)]
        cands.append(ok)
        best = min(cands, key=lambda r: (r.denominator, r))
        if pred(best):
            return best, True
        return ok, False

    below = [t for t, ok in verdicts if not ok and t < glo]
    above = [t for t, ok in verdicts if not ok and t > ghi]
    lower, lexact = refine(below[-1], glo) if below else (glo, True)
    upper, uexact = refine(above[0], ghi) if above else (ghi, True)
    return Interval(lower, upper, lexact, uexact, tol if not (lexact and uexact) else ZERO, diagnostic=note)


def _unit(v, name):
    v = parse_rational(v)
    if not ZERO <= v <= ONE:
        raise OutOfRange(f"{name} = {v} outside [0, 1]")
    return v


def frechet_bounds(x, y) -> Interval:
    """Coherent values of P((A|H) and (B|K)) for logically independent events."""
    x, y = _unit(x, "x"), _unit(y, "y")
    return Interval(max(x + y - 1, ZERO), min(x, y))


def iterated_coherent_set(x, y, z) -> Interval:
    """Coherent previsions of ``(B|K)|(A|H)`` given P(A|H)=x, P(B|K)=y and
    P((A|H) and (B|K))=z, for logically independent events."""
    x, y, z = _unit(x, "x"), _unit(y, "y"), _unit(z, "z")
    if not max(x + y - 1, ZERO) <= z <= min(x, y):
        raise IncoherentTriple(f"({x}, {y}, {z}) violates the Frechet-Hoeffding bounds")
    if x == 0:
        return Interval(ZERO, ONE)
    return Interval(z / x, z / x)


def ac_bounds(x, y) -> Interval:
    """Coherent values of P(A) given P(C)=x and P(C|A)=y."""
    x, y = _unit(x, "x"), _unit(y, "y")
    if x == y:
        return Interval(ZERO, ONE)
    if x < y:
        return Interval(ZERO, x / y)
    return Interval(ZERO, (1 - x) / (1 - y))


def _all_ones(family: Sequence, space: EventSpace) -> Assessment:
    from .coherence import assess

    return assess(space, [(as_cond(e), ONE) for e in family])


def p_consistent(family: Sequence, space: EventSpace) -> bool:
    return check_coherence(_all_ones(family, space)).coherent


def p_entails(family: Sequence, conclusion, space: EventSpace) -> bool:
    """True iff probability one on every premise forces it on the conclusion."""
    if not p_consistent(family, space):
        raise NotPConsistent("the premise family is not p-consistent")
    a = _all_ones(family, space)
    iv = extension_interval(a, as_cond(conclusion), check_base=False)
    return iv.lower == 1 and iv.upper == 1 and iv.convex
