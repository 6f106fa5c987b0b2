"""Conjunctions and iterated conditionals as value tables.

Expressions are small immutable trees (:class:`Cond`, :class:`Conj`,
:class:`Iter`).  Every assessed prevision a construction needs is looked up
in a context: a mapping from canonical expression keys to rationals.
Conjunction keys are order-insensitive and ignore repeated conjuncts, so a
context built for one ordering serves every permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import DegenerateAntecedent, EmptyAntecedent, MissingAssessment, OutOfRangeAssessment, UnsupportedExpression
from .eventspace import TRUE, EventSpace, Formula, Not, Or, And, _as_formula, format_formula
from .quantity import ONE, ZERO, ConditionalEvent, ValueTable, parse_rational, pointwise_combine

Context = Mapping[str, Fraction]


@dataclass(frozen=True)
class Cond:
    """``consequent | antecedent``; a bare event has antecedent ``true``."""

    consequent: Formula
    antecedent: Formula = TRUE
    span: Optional[tuple] = field(default=None, compare=False, hash=False, repr=False)

    @property
    def event(self) -> ConditionalEvent:
        return ConditionalEvent(self.consequent, self.antecedent)

    @property
    def bare(self) -> bool:
        return self.antecedent == TRUE


@dataclass(frozen=True)
class Conj:
    items: tuple
    span: Optional[tuple] = field(default=None, compare=False, hash=False, repr=False)


@dataclass(frozen=True)
class Iter:
    consequent: object
    antecedent: object
    span: Optional[tuple] = field(default=None, compare=False, hash=False, repr=False)


Expr = Union[Cond, Conj, Iter]


def cond(consequent, antecedent=TRUE) -> Cond:
    return Cond(_as_formula(consequent), _as_formula(antecedent))


def as_cond(e) -> Cond:
    if isinstance(e, Cond):
        return e
    if isinstance(e, ConditionalEvent):
        return Cond(e.consequent, e.antecedent)
    return Cond(_as_formula(e))


def conj_of(*items) -> Expr:
    items = tuple(as_node(i) for i in items)
    return items[0] if len(items) == 1 else Conj(items)


def iterated_of(consequent, antecedent) -> Expr:
    """``consequent | antecedent``; two bare events collapse to a plain
    conditional event."""
    c, a = as_node(consequent), as_node(antecedent)
    if isinstance(c, Cond) and isinstance(a, Cond) and c.bare and a.bare:
        return Cond(c.consequent, a.consequent)
    return Iter(c, a)


def as_node(e) -> Expr:
    if isinstance(e, (Cond, Conj, Iter)):
        return e
    return as_cond(e)


def conjuncts(e: Expr) -> list:
    """Flatten nested conjunctions."""
    if isinstance(e, Conj):
        out = []
        for i in e.items:
            out.extend(conjuncts(i))
        return out
    return [e]


def _cond_text(c: Cond) -> str:
    if c.bare:
        return format_formula(c.consequent)
    return f"{format_formula(c.consequent)}|{format_formula(c.antecedent)}"


def canonical_key(e) -> str:
    """Context key of an expression."""
    e = as_node(e)
    if isinstance(e, Cond):
        return _cond_text(e)
    if isinstance(e, Conj):
        keys = sorted({_item_key(i) for i in conjuncts(e)})
        return " && ".join(keys)
    return f"{_side_key(e.consequent)}|{_side_key(e.antecedent)}"


def _item_key(e) -> str:
    k = canonical_key(e)
    return f"({k})" if isinstance(e, Iter) else k


def _side_key(e) -> str:
    if isinstance(e, Cond) and e.bare:
        return canonical_key(e)
    return f"({canonical_key(e)})"


class _Lookup:
    """Context reader that records absent keys instead of failing fast."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.missing: set[str] = set()

    def get(self, key: str, forced: Optional[Fraction] = None) -> Fraction:
        if key in self.ctx:
            v = parse_rational(self.ctx[key])
            if not ZERO <= v <= ONE:
                raise OutOfRangeAssessment(f"{key} = {v} outside [0, 1]")
            return v
        if forced is not None:
            return forced
        self.missing.add(key)
        return ZERO

    def finish(self):
        if self.missing:
            raise MissingAssessment(self.missing)


def _unique(conds: Sequence[Cond]) -> list[Cond]:
    seen, out = set(), []
    for c in conds:
        k = canonical_key(c)
        if k not in seen:
            seen.add(k)
            out.append(c)
    return out


def _masks(conds: Sequence[Cond], space: EventSpace):
    out = []
    for c in conds:
        h = space.event(c.antecedent)
        if h == 0:
            raise EmptyAntecedent(f"antecedent of {_cond_text(c)} is impossible")
        e = space.event(c.consequent)
        out.append((e & h, (space.full ^ e) & h, space.full ^ h))
    return out


def _forced_value(conds: Sequence[Cond], space: EventSpace) -> Optional[Fraction]:
    """Value coherence forces on a conjunction whose table is constant on its
    conditioning event and never partially void there (e.g. ``A|A`` or
    ``C|A && not C|A``)."""
    masks = _masks(conds, space)
    h_any = 0
    for _, _, void in masks:
        h_any |= space.full ^ void
    seen = set()
    for i in range(len(space)):
        if not h_any >> i & 1:
            continue
        if any(f >> i & 1 for _, f, _ in masks):
            seen.add(ZERO)
        elif any(v >> i & 1 for _, _, v in masks):
            return None
        else:
            seen.add(ONE)
    return seen.pop() if len(seen) == 1 else None


def _conj_table(conds: Sequence[Cond], space: EventSpace, look: _Lookup) -> tuple[list[Fraction], int]:
    conds = _unique(conds)
    masks = _masks(conds, space)
    cond_mask = 0
    for _, _, void in masks:
        cond_mask |= space.full ^ void
    cache: dict[tuple, Fraction] = {}
    vals = []
    for i in range(len(space)):
        if any(f >> i & 1 for _, f, _ in masks):
            vals.append(ZERO)
            continue
        s = tuple(j for j, (_, _, v) in enumerate(masks) if v >> i & 1)
        if not s:
            vals.append(ONE)
            continue
        if s not in cache:
            sub = [conds[j] for j in s]
            key = canonical_key(sub[0]) if len(sub) == 1 else canonical_key(Conj(tuple(sub)))
            cache[s] = look.get(key, _forced_value(sub, space))
        vals.append(cache[s])
    return vals, cond_mask


def _plain_conds(e, what: str) -> list[Cond]:
    items = conjuncts(as_node(e))
    for i in items:
        if not isinstance(i, Cond):
            raise UnsupportedExpression(f"{what} must be a conditional event or a conjunction of them")
    return items


def _build(e: Expr, space: EventSpace, look: _Lookup) -> ValueTable:
    if isinstance(e, Cond):
        vals, mask = _conj_table([e], space, look)
        return ValueTable(space, vals, mask)
    if isinstance(e, Conj):
        items = conjuncts(e)
        iters = [i for i in items if isinstance(i, Iter)]
        if not iters:
            vals, mask = _conj_table(items, space, look)
            return ValueTable(space, vals, mask)
        if len(iters) > 1:
            raise UnsupportedExpression("at most one iterated conditional per conjunction")
        others = [i for i in items if not isinstance(i, Iter)]
        return _mixed(others, iters[0], space, look)
    return _iterated(e, space, look)


def _iterated(e: Iter, space: EventSpace, look: _Lookup) -> ValueTable:
    ante = _plain_conds(e.antecedent, "the antecedent of an iterated conditional")
    cons = _plain_conds(e.consequent, "the consequent of an iterated conditional")
    c0, _ = _conj_table(ante, space, look)
    c1, _ = _conj_table(ante + cons, space, look)
    mu = look.get(canonical_key(e))
    if len(ante) == 1:
        a, h = space.event(ante[0].consequent), space.event(ante[0].antecedent)
        if a & h == 0:
            raise DegenerateAntecedent(f"antecedent {canonical_key(ante[0])} is identically zero")
    elif not look.missing:
        hmask = 0
        for c in ante:
            hmask |= space.event(c.antecedent)
        if all(c0[i] == 0 for i in space.ids(hmask)):
            raise DegenerateAntecedent(f"antecedent {canonical_key(e.antecedent)} is identically zero")
    vals = [u + mu * (ONE - v) for u, v in zip(c1, c0)]
    mask = 0
    for i, (u, v) in enumerate(zip(c1, c0)):
        if u != 0 or v != 0:
            mask |= 1 << i
    return ValueTable(space, vals, mask)


def _mixed(others: list, it: Iter, space: EventSpace, look: _Lookup) -> ValueTable:
    for o in others:
        if not isinstance(o, Cond):
            raise UnsupportedExpression("unsupported conjunction member")
    ante = _plain_conds(it.antecedent, "the antecedent of a conjoined iterated conditional")
    if len(ante) != 1:
        raise UnsupportedExpression("a conjoined iterated conditional needs a single conditional antecedent")
    cons = _plain_conds(it.consequent, "the consequent of a conjoined iterated conditional")
    a = ante[0]
    if space.event(a.consequent) & space.event(a.antecedent) == 0:
        raise DegenerateAntecedent(f"antecedent {canonical_key(a)} is identically zero")
    nu = look.get(canonical_key(it))
    full, m1 = _conj_table(others + [a] + cons, space, look)
    neg = Cond(Not(a.consequent), a.antecedent)
    part, m2 = _conj_table(others + [neg], space, look)
    vals = [u + nu * v for u, v in zip(full, part)]
    return ValueTable(space, vals, m1 | m2)


def build_table(e, space: EventSpace, ctx: Context) -> ValueTable:
    """Value table of any supported expression; raises
    :class:`MissingAssessment` listing every absent key."""
    look = _Lookup(ctx)
    t = _build(as_node(e), space, look)
    look.finish()
    return t


def required_keys(e, space: EventSpace) -> list[str]:
    """Keys a construction reads from the context (forced values excluded)."""
    look = _Lookup({})
    try:
        _build(as_node(e), space, look)
    except DegenerateAntecedent:
        pass
    return sorted(look.missing)


def conjunction2(e1, e2, ctx: Context, space: EventSpace) -> ValueTable:
    return build_table(Conj((as_cond(e1), as_cond(e2))), space, ctx)


def conjunction_n(events: Sequence, ctx: Context, space: EventSpace) -> ValueTable:
    events = [as_cond(e) for e in events]
    if not events:
        raise ValueError("empty conjunction")
    return build_table(conj_of(*events), space, ctx)


def iterated(consequent, antecedent, ctx: Context, space: EventSpace, reduced: bool = False) -> ValueTable:
    """``(B|K)|(A|H)``.  With ``reduced`` the entry on not-H not-K uses
    ``mu`` in place of ``z + mu(1 - x)``."""
    c, a = as_cond(consequent), as_cond(antecedent)
    t = build_table(Iter(c, a), space, ctx)
    if not reduced:
        return t
    mu = parse_rational(ctx[canonical_key(Iter(c, a))])
    nh = space.full ^ space.event(a.antecedent)
    nk = space.full ^ space.event(c.antecedent)
    vals = list(t.values)
    for i in space.ids(nh & nk):
        vals[i] = mu
    return ValueTable(space, vals, t.cond)


def generalized_iterated(target, antecedent: Sequence, ctx: Context, space: EventSpace) -> ValueTable:
    ante = [as_cond(a) for a in antecedent]
    if not ante:
        raise ValueError("empty antecedent")
    return build_table(Iter(as_node(target), conj_of(*ante)), space, ctx)


def negate_expr(e) -> Expr:
    """The expression whose table is one minus the table of ``e``."""
    e = as_node(e)
    if isinstance(e, Cond):
        return Cond(Not(e.consequent), e.antecedent)
    if isinstance(e, Iter) and isinstance(e.consequent, Cond):
        return Iter(Cond(Not(e.consequent.consequent), e.consequent.antecedent), e.antecedent)
    raise UnsupportedExpression("negation is defined for conditional events and iterated conditionals")


def negate_context(e, ctx: Context) -> dict:
    """Extend ``ctx`` with the prevision ``1 - mu`` of the negation of ``e``."""
    out = dict(ctx)
    out[canonical_key(negate_expr(e))] = ONE - parse_rational(ctx[canonical_key(e)])
    return out


def negate_compound(t: ValueTable) -> ValueTable:
    return pointwise_combine("complement", t)


def mixed_conjunction(c, it: Iter, ctx: Context, space: EventSpace) -> ValueTable:
    return build_table(Conj((as_cond(c), it)), space, ctx)


def iterated_regime(consequent, antecedent, ctx: Context, space: EventSpace) -> Formula:
    """Conditioning event of ``consequent|(A|H)``: ``AH`` when P(A|H) = 0,
    otherwise ``AH or not H``."""
    a = as_cond(antecedent)
    x = parse_rational(ctx[canonical_key(a)])
    ah = And((a.consequent, a.antecedent))
    if x == 0:
        return ah
    return Or((ah, Not(a.antecedent)))
