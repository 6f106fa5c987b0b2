"""Exact rational linear programming.

A dense two-phase simplex over :class:`fractions.Fraction` with Bland's
pivot rule.  Infeasible systems come back with a Farkas certificate read
off the final phase-one duals; unbounded programs come back with a ray.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac_row(row) -> list[Fraction]:
    return [x if isinstance(x, Fraction) else Fraction(x) for x in row]


@dataclass
class LinearSystem:
    """``eq`` rows ``a.x = b``, ``le`` rows ``a.x <= b``; ``nonneg[j]`` marks x_j >= 0."""

    n_vars: int
    eq: list = field(default_factory=list)
    le: list = field(default_factory=list)
    nonneg: Optional[list] = None

    def __post_init__(self):
        if self.nonneg is None:
            self.nonneg = [True] * self.n_vars
        if len(self.nonneg) != self.n_vars:
            raise ValueError("nonneg flags must match the variable count")
        self.eq = [(_frac_row(a), Fraction(b)) for a, b in self.eq]
        self.le = [(_frac_row(a), Fraction(b)) for a, b in self.le]
        for a, _ in self.eq + self.le:
            if len(a) != self.n_vars:
                raise ValueError("row width differs from the variable count")

    def add_eq(self, coeffs, rhs):
        coeffs = _frac_row(coeffs)
        if len(coeffs) != self.n_vars:
            raise ValueError("row width differs from the variable count")
        self.eq.append((coeffs, Fraction(rhs)))

    def add_le(self, coeffs, rhs):
        coeffs = _frac_row(coeffs)
        if len(coeffs) != self.n_vars:
            raise ValueError("row width differs from the variable count")
        self.le.append((coeffs, Fraction(rhs)))

    def residuals_ok(self, x: Sequence[Fraction]) -> bool:
        """Exact membership test for a point."""
        if len(x) != self.n_vars:
            return False
        for j, v in enumerate(x):
            if self.nonneg[j] and v < 0:
                return False
        for a, b in self.eq:
            if sum((c * v for c, v in zip(a, x) if c), ZERO) != b:
                return False
        for a, b in self.le:
            if sum((c * v for c, v in zip(a, x) if c), ZERO) > b:
                return False
        return True


@dataclass
class SolveOutcome:
    status: str  # feasible | optimal | infeasible | unbounded
    point: Optional[list] = None
    value: Optional[Fraction] = None
    certificate: Optional[list] = None
    ray: Optional[list] = None

    @property
    def feasible(self) -> bool:
        return self.status in ("feasible", "optimal", "unbounded")


def verify_certificate(sys: LinearSystem, y: Sequence[Fraction]) -> bool:
    """Check a Farkas certificate: multipliers ``y`` (eq rows first, then le
    rows) with ``y_le >= 0``, ``y.A >= 0`` on nonnegative columns, ``= 0`` on
    free ones, and ``y.b < 0``."""
    rows = sys.eq + sys.le
    if len(y) != len(rows):
        return False
    for r in range(len(sys.eq), len(rows)):
        if y[r] < 0:
            return False
    for j in range(sys.n_vars):
        s = sum((y[r] * rows[r][0][j] for r in range(len(rows)) if y[r]), ZERO)
        if sys.nonneg[j] and s < 0:
            return False
        if not sys.nonneg[j] and s != 0:
            return False
    return sum((y[r] * rows[r][1] for r in range(len(rows))), ZERO) < 0


class _Tableau:
    def __init__(self, sys: LinearSystem):
        self.sys = sys
        # column map: structural columns, then slacks, then artificials
        self.colmap = []  # (orig var, sign) or None for slack
        for j in range(sys.n_vars):
            self.colmap.append((j, 1))
            if not sys.nonneg[j]:
                self.colmap.append((j, -1))
        n_struct = len(self.colmap)
        rows = sys.eq + sys.le
        m = len(rows)
        n_slack = len(sys.le)
        self.n_real = n_struct + n_slack
        self.n_cols = self.n_real + m
        self.m = m
        self.sign = []
        self.T = []
        for r, (a, b) in enumerate(rows):
            row = []
            for j, s in self.colmap:
                row.append(a[j] * s)
            slack = [ZERO] * n_slack
            if r >= len(sys.eq):
                slack[r - len(sys.eq)] = ONE
            row += slack
            sg = -1 if b < 0 else 1
            self.sign.append(sg)
            if sg < 0:
                row = [-v for v in row]
                b = -b
            art = [ZERO] * m
            art[r] = ONE
            self.T.append(row + art + [b])
        self.basis = [self.n_real + r for r in range(m)]
        self.rowid = list(range(m))  # original row index of each tableau row

    def pivot(self, r: int, j: int):
        T = self.T
        prow = T[r]
        p = prow[j]
        if p != 1:
            prow = [v / p for v in prow]
            T[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][j]
            if f:
                row = T[i]
                for k in nz:
                    row[k] -= f * prow[k]
        self.basis[r] = j

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        d = list(cost) + [ZERO]
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[r]
                for k, v in enumerate(row):
                    if v:
                        d[k] -= cb * v
        return d

    def run(self, cost: list[Fraction], allowed: int):
        """Minimize ``cost`` over columns ``< allowed``; returns None or an
        entering column index proving unboundedness."""
        d = self.reduced_costs(cost)
        while True:
            enter = next((j for j in range(allowed) if d[j] < 0), None)
            if enter is None:
                self.d = d
                return None
            best = None
            for r in range(len(self.T)):
                a = self.T[r][enter]
                if a > 0:
                    ratio = self.T[r][-1] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                self.d = d
                return enter
            r = best[1]
            self.pivot(r, enter)
            prow = self.T[r]
            f = d[enter]
            for k, v in enumerate(prow):
                if v:
                    d[k] -= f * v

    def column_values(self) -> list[Fraction]:
        x = [ZERO] * self.n_cols
        for r, b in enumerate(self.basis):
            x[b] = self.T[r][-1]
        return x

    def to_original(self, colvals: list[Fraction]) -> list[Fraction]:
        out = [ZERO] * self.sys.n_vars
        for c, (j, s) in enumerate(self.colmap):
            if colvals[c]:
                out[j] += s * colvals[c]
        return out


def _phase_one(sys: LinearSystem):
    tab = _Tableau(sys)
    cost = [ZERO] * tab.n_real + [ONE] * tab.m
    tab.run(cost, tab.n_cols)
    w = -tab.d[-1]
    if w > 0:
        # duals u_r = c_art_r - d_art_r on the sign-normalised rows
        y = [None] * tab.m
        for r in range(tab.m):
            u = ONE - tab.d[tab.n_real + r]
            y[r] = -tab.sign[r] * u
        return tab, y
    # drive zero-level artificials out of the basis; drop redundant rows
    r = 0
    while r < len(tab.T):
        if tab.basis[r] >= tab.n_real:
            row = tab.T[r]
            j = next((k for k in range(tab.n_real) if row[k]), None)
            if j is None:
                del tab.T[r]
                del tab.basis[r]
                del tab.rowid[r]
                continue
            tab.pivot(r, j)
        r += 1
    return tab, None


def solve_feasibility(sys: LinearSystem) -> SolveOutcome:
    tab, cert = _phase_one(sys)
    if cert is not None:
        return SolveOutcome("infeasible", certificate=cert)
    point = tab.to_original(tab.column_values())
    return SolveOutcome("feasible", point=point)


def optimize(objective: Sequence, direction: str, sys: LinearSystem) -> SolveOutcome:
    """Minimize or maximize ``objective . x`` over the system."""
    if direction not in ("min", "max"):
        raise ValueError("direction must be 'min' or 'max'")
    obj = _frac_row(objective)
    if len(obj) != sys.n_vars:
        raise ValueError("objective width differs from the variable count")
    tab, cert = _phase_one(sys)
    if cert is not None:
        return SolveOutcome("infeasible", certificate=cert)
    sgn = 1 if direction == "min" else -1
    cost = [ZERO] * tab.n_cols
    for c, (j, s) in enumerate(tab.colmap):
        cost[c] = sgn * s * obj[j]
    enter = tab.run(cost, tab.n_real)
    colvals = tab.column_values()
    point = tab.to_original(colvals)
    if enter is not None:
        dirv = [ZERO] * tab.n_cols
        dirv[enter] = ONE
        for r, b in enumerate(tab.basis):
            dirv[b] = -tab.T[r][enter]
        ray = tab.to_original(dirv)
        return SolveOutcome("unbounded", point=point, ray=ray)
    value = sum((o * v for o, v in zip(obj, point) if o), ZERO)
    return SolveOutcome("optimal", point=point, value=value)
