"""Executable checks of the closed-form results about conjoined and
iterated conditionals.

Every check draws exact rationals from a seeded generator, computes the
quantities of interest with the coherence engine and compares them with the
closed form.  A failing check reports the first counterexample found.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .coherence import Assessment, assess, check_coherence
from .compound import Cond, Conj, Iter, build_table, canonical_key, cond
from .eventspace import EventSpace, TRUE, neg, conj, disj
from .propagation import (
    Interval,
    ac_bounds,
    extension_interval,
    frechet_bounds,
    p_entails,
)
from .quantity import ONE, ZERO, format_rational, make_crq, pointwise_combine, prevision_under_mass, indicator

MAX_DEN = 64


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail
    description: str
    seed: int
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "description": self.description,
            "seed": self.seed,
            "details": self.details,
        }


class Mismatch(Exception):
    def __init__(self, **info):
        super().__init__(info)
        self.info = info


def _fmt(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, Interval):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _fmt(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    return v if isinstance(v, (int, bool, str)) or v is None else str(v)


def expect(ok: bool, **info):
    if not ok:
        raise Mismatch(**{k: _fmt(v) for k, v in info.items()})


def rand_unit(rng: random.Random, lo_open=False, hi_open=False) -> Fraction:
    """Rational in [0, 1] with denominator at most 64 (endpoints optional)."""
    while True:
        d = rng.randint(1, MAX_DEN)
        v = Fraction(rng.randint(0, d), d)
        if (lo_open and v == 0) or (hi_open and v == 1):
            continue
        return v


def rand_weights(rng: random.Random, n: int, zero=()) -> list[Fraction]:
    """Random distribution on ``n`` cells, exactly zero on ``zero``."""
    while True:
        w = [0 if i in zero else rng.randint(1, 16) for i in range(n)]
        s = sum(w)
        if s:
            return [Fraction(x, s) for x in w]


class World:
    """A probability distribution on the constituents, expressed as an
    assessment on minterms, to which derived previsions are added as they
    are computed."""

    def __init__(self, space: EventSpace, weights):
        self.space = space
        self.p = list(weights)
        pairs = [(Cond(space.formula_of(1 << i)), w) for i, w in enumerate(self.p)]
        self.a = assess(space, pairs)
        self.ctx: dict = {}

    def prob(self, f) -> Fraction:
        m = self.space.event(f)
        return sum((w for i, w in enumerate(self.p) if m >> i & 1), ZERO)

    def cprob(self, f, g) -> Optional[Fraction]:
        pg = self.prob(g)
        return None if pg == 0 else self.prob(conj(f, g)) / pg

    def interval(self, expr) -> Interval:
        return extension_interval(self.a, expr, self.ctx, check_base=False)

    def derive(self, expr) -> Fraction:
        """Coherent prevision of ``expr``; it must be uniquely determined."""
        iv = self.interval(expr)
        expect(iv.lower == iv.upper, undetermined=canonical_key(expr), interval=iv)
        self.fix(expr, iv.lower)
        return iv.lower

    def fix(self, expr, value):
        key = canonical_key(expr)
        ctx = dict(self.ctx)
        ctx[key] = value
        full = {canonical_key(e): p for e, p in zip(self.a.exprs, self.a.previsions)}
        full.update(ctx)
        t = build_table(expr, self.space, full)
        self.a = self.a.extended(expr, t, value)
        self.ctx = ctx

    def table(self, expr, value=None):
        full = {canonical_key(e): p for e, p in zip(self.a.exprs, self.a.previsions)}
        full.update(self.ctx)
        if value is not None:
            full[canonical_key(expr)] = value
        return build_table(expr, self.space, full)


# atoms used throughout
A, C, D, H, K, B = "A", "C", "D", "H", "K", "B"


def _pos(space, *lits):
    """Index set of constituents matching all literals (``~X`` negated)."""
    out = set()
    for c in space:
        env = c.assignment
        if all(env[l[1:]] is False if l.startswith("~") else env[l] for l in lits):
            out.add(c.id)
    return out


# -- checks ---------------------------------------------------------------


def check_frechet(rng, trials):
    space = EventSpace([A, H, B, K])
    grid = [Fraction(i, 8) for i in range(9)]
    for x in grid:
        for y in grid:
            a = assess(space, [(cond(A, H), x), (cond(B, K), y)])
            iv = extension_interval(a, Conj((cond(A, H), cond(B, K))))
            fb = frechet_bounds(x, y)
            expect(iv.as_pair() == fb.as_pair() and iv.exact, x=x, y=y, computed=iv, expected=fb)
    return {"grid_points": 81}


def check_iterated_set(rng, trials):
    space = EventSpace([A, H, B, K])
    ah, bk = cond(A, H), cond(B, K)
    it = Iter(bk, ah)
    for _ in range(trials):
        x, y = rand_unit(rng), rand_unit(rng)
        lo, hi = max(x + y - 1, ZERO), min(x, y)
        z = lo + (hi - lo) * rand_unit(rng)
        for mu in {rand_unit(rng), z / x if x else rand_unit(rng)}:
            a = assess(space, [(ah, x), (bk, y), (Conj((ah, bk)), z), (it, mu)])
            member = (x > 0 and mu == z / x) or (x == 0 and z == 0)
            expect(check_coherence(a).coherent == member, x=x, y=y, z=z, mu=mu, expected=member)
    return {"samples": trials}


def check_dynamic_conditioning(rng, trials):
    space = EventSpace([A, C, D])
    ca = cond(C, A)
    it = Iter(cond(D), ca)
    ac = conj(A, C)
    mat = disj(conj(A, C), neg(A))
    witnessed = {"D|AC": set(), "D|(AC or not A)": set(), "pair": set()}
    for regime in ("zero", "inner", "one"):
        for _ in range(trials):
            x = ZERO if regime == "zero" else ONE if regime == "one" else rand_unit(rng, True, True)
            mu = rand_unit(rng)
            ctx = {"C|A": x, canonical_key(it): mu}
            t = build_table(it, space, ctx)
            rows = {
                ("A", "C", "D"): ONE,
                ("A", "C", "~D"): ZERO,
                ("A", "~C"): mu,
                ("~A", "D"): x + mu * (1 - x),
                ("~A", "~D"): mu * (1 - x),
            }
            for lits, v in rows.items():
                for i in _pos(space, *lits):
                    expect(t[i] == v, regime=regime, x=x, mu=mu, constituent=space.constituents[i].label())
            if regime == "zero":
                ref = indicator(cond(D, ac).event, mu, space)
                expect(t == ref, regime=regime, x=x, mu=mu, table=t.as_dict(), expected=ref.as_dict())
                other = mu + (1 - mu) * rand_unit(rng, True) if mu < 1 else mu / 2
                a = assess(space, [(ca, x), (it, mu), (cond(D, ac), other)])
                expect(not check_coherence(a).coherent, regime=regime, x=x, mu=mu, t=other)
            elif regime == "one":
                ref = indicator(cond(D, mat).event, mu, space)
                expect(t == ref, regime=regime, x=x, mu=mu, table=t.as_dict(), expected=ref.as_dict())
                other = mu + (1 - mu) * rand_unit(rng, True) if mu < 1 else mu / 2
                a = assess(space, [(ca, x), (it, mu), (cond(D, mat), other)])
                expect(not check_coherence(a).coherent, regime=regime, x=x, mu=mu, nu=other)
            else:
                expect(t.cond == space.event(mat), regime=regime, x=x)
                # order relations among D|AC, D|(C|A), D|(AC or not A) on a coherent world
                w = World(space, rand_weights(rng, 8))
                w.fix(ca, w.cprob(C, A))
                mu_w = w.derive(it)
                tt = w.derive(cond(D, ac))
                nu = w.derive(cond(D, mat))
                tabs = {
                    "D|AC": indicator(cond(D, ac).event, tt, space),
                    "D|(C|A)": w.table(it, mu_w),
                    "D|(AC or not A)": indicator(cond(D, mat).event, nu, space),
                }
                for pair, (l, r) in {
                    "D|AC": ("D|(C|A)", "D|AC"),
                    "D|(AC or not A)": ("D|(C|A)", "D|(AC or not A)"),
                    "pair": ("D|AC", "D|(AC or not A)"),
                }.items():
                    for u, v in zip(tabs[l].values, tabs[r].values):
                        if u < v:
                            witnessed[pair].add("<")
                        if u > v:
                            witnessed[pair].add(">")
    for pair, signs in witnessed.items():
        expect(signs == {"<", ">"}, comparison=pair, witnessed=sorted(signs))
    return {"samples_per_regime": trials}


def check_negation(rng, trials):
    space = EventSpace([A, C, D])
    ca = cond(C, A)
    it = Iter(cond(D), ca)
    nit = Iter(cond(neg(D)), ca)
    for regime in ("zero", "inner", "one"):
        for _ in range(trials):
            x = ZERO if regime == "zero" else ONE if regime == "one" else rand_unit(rng, True, True)
            mu = rand_unit(rng)
            ctx = {"C|A": x, canonical_key(it): mu, canonical_key(nit): 1 - mu}
            t = build_table(it, space, ctx)
            n = build_table(nit, space, ctx)
            s = pointwise_combine("add", t, n)
            expect(all(v == 1 for v in s.values), regime=regime, x=x, mu=mu, sum=s.as_dict())
            expect(pointwise_combine("complement", t).values == n.values, regime=regime, x=x, mu=mu)
            if regime == "zero":
                ref = indicator(cond(neg(D), conj(A, C)).event, 1 - mu, space)
                expect(n == ref, regime=regime, x=x, mu=mu)
        # coherence forces the complementary prevision
        zero = {0, 1} if regime == "zero" else {2, 3} if regime == "one" else set()
        w = World(space, rand_weights(rng, 8, zero=zero))
        w.fix(ca, w.cprob(C, A))
        iv = w.interval(it)
        # with P(AC) = 0 the prevision is free; any choice fixes its negation
        mu_w = iv.lower + (iv.upper - iv.lower) * rand_unit(rng)
        w.fix(it, mu_w)
        eta = w.interval(nit)
        expect(eta.as_pair() == (1 - mu_w, 1 - mu_w), regime=regime, mu=mu_w, negation=eta)
    return {"samples_per_regime": trials}


def check_self_antecedent_table(rng, trials):
    space = EventSpace([A, C])
    ca = cond(C, A)
    it = Iter(cond(A), ca)
    mat = disj(conj(A, C), neg(A))
    for regime in ("zero", "inner", "one"):
        for _ in range(trials):
            x = ZERO if regime == "zero" else ONE if regime == "one" else rand_unit(rng, True, True)
            mu = rand_unit(rng)
            t = build_table(it, space, {"C|A": x, canonical_key(it): mu})
            rows = {("A", "C"): ONE, ("~A",): mu * (1 - x), ("A", "~C"): mu}
            for lits, v in rows.items():
                for i in _pos(space, *lits):
                    expect(t[i] == v, regime=regime, x=x, mu=mu, constituent=space.constituents[i].label())
            if regime == "one":
                ref = indicator(cond(A, mat).event, mu, space)
                expect(t == ref, regime=regime, x=x, mu=mu)
            if regime == "zero":
                expect(t.cond == space.event(conj(A, C)), regime=regime, x=x)
        # A|AC is identically one and the x = 0 prevision is forced to one
        sure = build_table(cond(A, conj(A, C)), space, {})
        expect(all(v == 1 for v in sure.values), table=sure.as_dict())
    for _ in range(trials):
        y = rand_unit(rng)
        a = assess(space, [(ca, ZERO), (cond(A), y)])
        iv = extension_interval(a, it)
        expect(iv.as_pair() == (ONE, ONE), x=0, y=y, computed=iv)
    return {"samples_per_regime": trials}


def check_self_antecedent_prevision(rng, trials):
    space = EventSpace([A, C])
    it = Iter(cond(A), cond(C, A))
    grid = [Fraction(i, 8) for i in range(9)]
    points = [(x, y) for x in grid for y in grid]
    points += [(rand_unit(rng), rand_unit(rng)) for _ in range(trials)]
    for x, y in points:
        a = assess(space, [(cond(C, A), x), (cond(A), y)])
        iv = extension_interval(a, it)
        exp = (y, y) if x > 0 else (ONE, ONE)
        expect(iv.as_pair() == exp, x=x, y=y, computed=iv, expected=exp)
    return {"points": len(points)}


def check_self_antecedent_order(rng, trials):
    space = EventSpace([A, C])
    ca = cond(C, A)
    it = Iter(cond(A), ca)
    mat = disj(conj(A, C), neg(A))
    for k in range(trials):
        zero = [(), (0,), (1,)][k % 3]  # generic, x = 0, x = 1
        w = World(space, rand_weights(rng, 4, zero=zero))
        w.fix(ca, w.cprob(C, A))
        mu = w.derive(it)
        nu = w.derive(cond(A, mat))
        low = indicator(cond(A, mat).event, nu, space)
        mid = w.table(it, mu)
        top = build_table(cond(A, conj(A, C)), space, {})
        ok = all(l <= m <= t == 1 for l, m, t in zip(low.values, mid.values, top.values))
        expect(ok and nu <= mu <= 1, nu=nu, mu=mu, low=low.as_dict(), mid=mid.as_dict())
    return {"samples": trials}


def check_material_identity(rng, trials):
    space = EventSpace([A, C])
    ca = cond(C, A)
    it = Iter(cond(A), ca)
    mat_c = cond(A, disj(conj(A, C), neg(A)))
    grid = [Fraction(i, 8) for i in range(9)]
    points = [(x, y) for x in grid for y in grid] + [(rand_unit(rng), rand_unit(rng)) for _ in range(trials)]
    for x, y in points:
        a = assess(space, [(ca, x), (cond(A), y)])
        mu_iv = extension_interval(a, it)
        expect(mu_iv.lower == mu_iv.upper, x=x, y=y, mu=mu_iv)
        mu = mu_iv.lower
        nu_iv = extension_interval(a, mat_c)
        if x * y + 1 - y > 0:
            nu = x * y / (x * y + 1 - y)
            expect(nu_iv.as_pair() == (nu, nu), x=x, y=y, nu=nu_iv, expected=nu)
            candidates = [nu]
        else:
            candidates = [nu_iv.lower, nu_iv.upper]
        for nu in candidates:
            expect(mu == nu + mu * (1 - x) * (1 - nu), x=x, y=y, mu=mu, nu=nu)
        if x > 0 and x * y + 1 - y > 0:
            nu = candidates[0]
            expect(nu / (nu + x - x * nu) == y, x=x, y=y, nu=nu)
    return {"points": len(points)}


def check_ac_bounds(rng, trials):
    space = EventSpace([A, C])
    grid = [Fraction(i, 8) for i in range(9)]
    for x in grid:
        for y in grid:
            a = assess(space, [(cond(C), x), (cond(C, A), y)])
            iv = extension_interval(a, cond(A))
            exp = ac_bounds(x, y)
            expect(iv.as_pair() == exp.as_pair(), x=x, y=y, computed=iv, expected=exp)
    expect(not p_entails([cond(C), cond(C, A)], cond(A), space), inference="C, C|A entails A")
    for _ in range(trials):
        k = rand_unit(rng, hi_open=True)
        a = assess(space, [(cond(C), ONE), (cond(C, A), ONE), (cond(C, neg(A)), k)])
        iv = extension_interval(a, cond(A))
        expect(iv.as_pair() == (ONE, ONE), k=k, computed=iv)
    return {"grid_points": 81, "weak_samples": trials}


def check_latent_consequent(rng, trials):
    space = EventSpace([A, C])
    ca = cond(C, A)
    target = Iter(cond(A), Conj((ca, cond(C))))
    for k in range(trials):
        zero = [(), (0,), (0, 1, 2)][k % 3] if k % 5 == 4 else ()
        w = World(space, rand_weights(rng, 4, zero=zero))
        pa, pac = w.prob(A), w.prob(disj(A, C))
        x = w.cprob(C, A)
        if x is None:
            continue
        w.fix(ca, x)
        iv = w.interval(target)
        if x * pac > 0:
            exp = pa / pac
            expect(iv.as_pair() == (exp, exp), computed=iv, expected=exp, weights=w.p)
        elif x == 0:
            expect(iv.as_pair() == (ONE, ONE), computed=iv, weights=w.p)
        expect(iv.lower >= pa, computed=iv, p_a=pa, weights=w.p)
        pc = w.cprob(A, C)
        if pc is not None:
            expect(iv.lower >= pc, computed=iv, p_a_given_c=pc, weights=w.p)
    return {"samples": trials}


def check_conditional_disjunction(rng, trials):
    space = EventSpace([A, C, H])
    ca, ah = cond(C, A), cond(A, H)
    target = Iter(cond(A), Conj((ca, ah)))
    for _ in range(trials):
        w = World(space, rand_weights(rng, 8))
        x, y = w.cprob(C, A), w.cprob(A, H)
        w.fix(ca, x)
        w.fix(ah, y)
        z = w.derive(Conj((ca, ah)))
        pah = w.prob(disj(A, H))
        zf = (w.prob(conj(A, C, H)) + y * w.prob(conj(A, C, neg(H)))) / pah
        expect(z == zf, z=z, expected=zf, weights=w.p)
        iv = w.interval(target)
        expect(iv.as_pair() == (pah, pah), computed=iv, expected=pah, weights=w.p)
        t = w.table(target, pah)
        rows = {
            ("A", "C", "H"): ONE,
            ("A", "C", "~H"): y + pah * (1 - y),
            ("~A", "~H"): pah * (1 - z),
            ("A", "~C"): pah,
            ("~A", "H"): pah,
        }
        for lits, v in rows.items():
            for i in _pos(space, *lits):
                expect(t[i] == v, constituent=space.constituents[i].label(), value=t[i], expected=v)
    return {"samples": trials}


def check_conjoined_iterated(rng, trials):
    space = EventSpace([A, C, K])
    ca = cond(C, A)
    kca = Iter(cond(K), ca)
    s2 = EventSpace([A, H, B, K])
    ah, bk = cond(A, H), cond(B, K)
    for _ in range(trials):
        x, nu, w = rand_unit(rng), rand_unit(rng), rand_unit(rng)
        ctx = {"C|A": x, canonical_key(kca): nu, canonical_key(Conj((ca, cond(K)))): w}
        mixed = build_table(Conj((ca, kca)), space, ctx)
        plain = build_table(Conj((ca, cond(K))), space, ctx)
        expect(mixed.values == plain.values, x=x, nu=nu, w=w, mixed=mixed.as_dict(), plain=plain.as_dict())
        xx, yy, zz, mu = (rand_unit(rng) for _ in range(4))
        ctx = {"A|H": xx, "B|K": yy, canonical_key(Conj((ah, bk))): zz, canonical_key(Iter(bk, ah)): mu}
        m2 = build_table(Conj((ah, Iter(bk, ah))), s2, ctx)
        p2 = build_table(Conj((ah, bk)), s2, ctx)
        expect(m2.values == p2.values, x=xx, y=yy, z=zz, mu=mu)
    return {"samples": trials}


def check_product_laws(rng, trials):
    s4 = EventSpace([A, H, B, K])
    ah, bk = cond(A, H), cond(B, K)
    s3 = EventSpace([A, B, C, D])
    e1, e2, e3 = cond(A, B), cond(C, D), cond(B, disj(C, A))
    for _ in range(trials):
        w = World(s4, rand_weights(rng, 16))
        x, y = w.cprob(A, H), w.cprob(B, K)
        w.fix(ah, x)
        w.fix(bk, y)
        z = w.derive(Conj((ah, bk)))
        mu = w.derive(Iter(bk, ah))
        expect(z == mu * x, x=x, y=y, z=z, mu=mu, weights=w.p)
        v = World(s3, rand_weights(rng, 16))
        for e in (e1, e2, e3):
            v.fix(e, v.cprob(e.consequent, e.antecedent))
        for pair in ((e1, e3), (e2, e3)):
            v.derive(Conj(pair))
        zn = v.derive(Conj((e1, e2)))
        zn1 = v.derive(Conj((e1, e2, e3)))
        mun = v.derive(Iter(e3, Conj((e1, e2))))
        expect(zn1 == mun * zn, z_n=zn, z_n1=zn1, mu=mun, weights=v.p)
    return {"samples": trials}


def check_monotone(rng, trials):
    space = EventSpace([A, B, C, D])
    events = [cond(A, B), cond(C, D), cond(B, disj(C, neg(A))), cond(D, neg(B))]
    from itertools import combinations

    for _ in range(max(1, trials // 10)):
        w = World(space, rand_weights(rng, 16, zero={rng.randrange(16)}))
        for e in events:
            p = w.cprob(e.consequent, e.antecedent)
            expect(p is not None, event=canonical_key(e))
            w.fix(e, p)
        for r in range(2, 5):
            for sub in combinations(events, r):
                w.derive(Conj(sub))
        for n in (1, 2, 3):
            small = w.table(events[0] if n == 1 else Conj(tuple(events[:n])))
            big = w.table(Conj(tuple(events[: n + 1])))
            expect(all(u <= v for u, v in zip(big.values, small.values)), n=n, big=big.as_dict(), small=small.as_dict())
    return {"samples": max(1, trials // 10)}


def check_nontriviality(rng, trials):
    space = EventSpace([A, C])
    ca = cond(C, A)
    for _ in range(trials):
        w = World(space, rand_weights(rng, 4))
        x = w.cprob(C, A)
        w.fix(ca, x)
        alpha = w.derive(Iter(ca, cond(C)))
        beta = w.derive(Iter(ca, cond(neg(C))))
        pc = w.prob(C)
        expect(x == alpha * pc + beta * (1 - pc), x=x, alpha=alpha, beta=beta, p_c=pc)
        expect(alpha != 1 and beta != 0, alpha=alpha, beta=beta, weights=w.p)
        expect(x != pc or alpha * pc + beta * (1 - pc) == pc, x=x, p_c=pc)
    return {"samples": trials}


def check_uncorrelated(rng, trials):
    # X in {1, -1, 0}, one value per constituent, Y = X squared
    space = EventSpace(["U", "V"], impossible=[conj("U", "V")])
    ids = {c.label(): c.id for c in space}
    xvals = {ids["U ~V"]: 1, ids["~U V"]: -1, ids["~U ~V"]: 0}
    X = make_crq(xvals, TRUE, 0, space)
    Y = pointwise_combine("mul", X, X)
    XY = pointwise_combine("mul", X, Y)
    third = {i: Fraction(1, 3) for i in range(3)}
    ex, ey, exy = (prevision_under_mass(t, third) for t in (X, Y, XY))
    expect((ex, ey, exy) == (0, Fraction(2, 3), 0), EX=ex, EY=ey, EXY=exy)
    joint = sum((third[i] for i in range(3) if X[i] == 1 and Y[i] == 1), ZERO)
    px1 = sum((third[i] for i in range(3) if X[i] == 1), ZERO)
    py1 = sum((third[i] for i in range(3) if Y[i] == 1), ZERO)
    expect(joint == Fraction(1, 3) and px1 * py1 == Fraction(2, 9), joint=joint, product=px1 * py1)

    # C|A and A with P(C|A) = P(A) = 1/2
    s2 = EventSpace([A, C])
    w = World(s2, [Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)])
    ca = cond(C, A)
    w.fix(ca, w.cprob(C, A))
    prod = w.derive(Conj((ca, cond(A))))
    expect(prod == w.cprob(C, A) * w.prob(A), conjunction=prod)
    both = w.prob(conj(A, C))
    expect(both == Fraction(1, 4) and w.prob(A) * both == Fraction(1, 8), joint=both, product=w.prob(A) * both)
    t_conj = w.table(Conj((ca, cond(A))))
    t_prod = pointwise_combine("mul", w.table(ca), w.table(cond(A)))
    expect(t_conj.values == t_prod.values, conjunction=t_conj.as_dict(), product=t_prod.as_dict())

    # incompatible antecedents give the product law without independence
    s3 = EventSpace([A, H, B, K], impossible=[conj(H, K)])
    for _ in range(trials):
        w = World(s3, rand_weights(rng, len(s3)))
        x, y = w.cprob(A, H), w.cprob(B, K)
        w.fix(cond(A, H), x)
        w.fix(cond(B, K), y)
        z = w.derive(Conj((cond(A, H), cond(B, K))))
        expect(z == x * y, x=x, y=y, z=z, weights=w.p)
        pah, pnk = w.prob(conj(A, H)), w.prob(neg(K))
        expect(w.prob(conj(A, H, neg(K))) == pah and (pah * pnk != pah or pah == 0 or pnk == 1), weights=w.p)
    return {"samples": trials}


def check_stalnaker_desk(rng, trials):
    space = EventSpace([A, C])
    w = World(space, [Fraction(1, 4)] * 4)
    pca = w.cprob(C, A)

    def stalnaker(closest: str) -> Fraction:
        # the selected antecedent world for every not-A world is ``closest``
        total = ZERO
        for c in space:
            env = c.assignment
            chosen = env if env["A"] else {"A": True, "C": closest == "AC"}
            if chosen["C"]:
                total += w.p[c.id]
        return total

    expect(stalnaker("AC") == Fraction(3, 4) and pca == Fraction(1, 2), stalnaker=stalnaker("AC"), conditional=pca)
    expect(stalnaker("A~C") == Fraction(1, 4), stalnaker=stalnaker("A~C"))
    return {"stalnaker_ac_closest": "3/4", "stalnaker_anc_closest": "1/4", "conditional": "1/2"}


def check_negation_variants(rng, trials):
    space = EventSpace([A, C])
    grid = [Fraction(i, 8) for i in range(1, 9)]
    pts = [(x, y) for x in grid for y in [Fraction(i, 8) for i in range(9)]]
    pts += [(rand_unit(rng, lo_open=True), rand_unit(rng)) for _ in range(trials // 4)]
    for cons in (A, neg(A)):
        for ante_c in (C, neg(C)):
            for ante_a in (A, neg(A)):
                inner = cond(ante_c, ante_a)
                it = Iter(cond(cons), inner)
                for x, y in pts:
                    a = assess(space, [(inner, x), (cond(A), y)])
                    iv = extension_interval(a, it)
                    exp = y if cons == A else 1 - y
                    expect(iv.as_pair() == (exp, exp), target=canonical_key(it), x=x, y=y, computed=iv)
    return {"variants": 8, "points": len(pts)}


def check_latent_information(rng, trials):
    space = EventSpace([A, C, K])
    ca = cond(C, A)
    target = Iter(cond(A), Conj((ca, cond(K))))
    done = 0
    attempts = 0
    while done < trials and attempts < 50 * trials:
        attempts += 1
        w = World(space, rand_weights(rng, 8))
        pa, pak, pcak, pca = w.prob(A), w.cprob(A, K), w.cprob(C, conj(A, K)), w.cprob(C, A)
        if not (pak >= pa and pcak >= pca):
            continue
        w.fix(ca, pca)
        z = w.derive(Conj((ca, cond(K))))
        if z <= 0:
            continue
        iv = w.interval(target)
        closed = pak * pcak / (pcak * pak + pca * (1 - pak))
        expect(iv.as_pair() == (closed, closed), computed=iv, expected=closed, weights=w.p)
        expect(iv.lower >= pak >= pa, computed=iv, p_a_given_k=pak, p_a=pa)
        done += 1
    expect(done == trials, accepted=done, requested=trials)
    return {"samples": done}


CHECKS: dict[str, tuple[Callable, str]] = {
    "frechet_hoeffding": (check_frechet, "conjunction bounds for two free conditional events"),
    "iterated_prevision_set": (check_iterated_set, "coherent previsions of (B|K)|(A|H) given x, y, z"),
    "dynamic_conditioning": (check_dynamic_conditioning, "D|(C|A) in the three regimes of P(C|A)"),
    "negation_sum_to_one": (check_negation, "D|(C|A) plus not-D|(C|A) equals one"),
    "self_antecedent_table": (check_self_antecedent_table, "values of A|(C|A) by regime"),
    "self_antecedent_prevision": (check_self_antecedent_prevision, "P[A|(C|A)] equals P(A) when P(C|A) > 0"),
    "self_antecedent_order": (check_self_antecedent_order, "A|(AC or not A) <= A|(C|A) <= A|AC"),
    "material_antecedent_identity": (check_material_identity, "mu = nu + mu(1-x)(1-nu)"),
    "affirming_consequent_bounds": (check_ac_bounds, "bounds on P(A) from P(C) and P(C|A)"),
    "latent_consequent_bounds": (check_latent_consequent, "A|((C|A) and C) against P(A) and P(A|C)"),
    "conditional_disjunction": (check_conditional_disjunction, "A|((C|A) and (A|H)) equals P(A or H)"),
    "conjoined_iterated_reduction": (check_conjoined_iterated, "conjunction with an iterated conditional"),
    "compound_prevision_product": (check_product_laws, "z = mu x and z_{n+1} = mu z_n"),
    "conjunction_monotone": (check_monotone, "longer conjunctions are pointwise smaller"),
    "nontriviality_identity": (check_nontriviality, "P(C|A) decomposes over C without collapse"),
    "uncorrelated_not_independent": (check_uncorrelated, "uncorrelation without independence"),
    "stalnaker_desk": (check_stalnaker_desk, "closest-world conditional versus P(C|A)"),
    "negation_variants": (check_negation_variants, "negated variants of P[A|(C|A)] = P(A)"),
    "latent_information_bound": (check_latent_information, "A|((C|A) and K) under monotone side conditions"),
}


def run_check(name: str, seed: int, trials: int) -> CheckResult:
    fn, desc = CHECKS[name]
    rng = random.Random(f"{seed}:{name}")
    try:
        details = fn(rng, trials)
        return CheckResult(name, "pass", desc, seed, _fmt(details))
    except Mismatch as m:
        return CheckResult(name, "fail", desc, seed, {"counterexample": m.info})


def run_suite(seed: int = 0, trials: int = 100, names=None) -> list[CheckResult]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    names = sorted(CHECKS) if names is None else sorted(names)
    return [run_check(n, seed, trials) for n in names]


def format_report(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{r.name.ljust(width)}  {r.status.upper():4}  {r.description}" for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
