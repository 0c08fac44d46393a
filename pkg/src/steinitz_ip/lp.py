"""Exact rational simplex for ``max c.x  s.t.  A x = rhs, lower <= x <= upper``.

A dense tableau over :class:`fractions.Fraction` with implicit box bounds
(nonbasic variables sit at either bound) and Bland's lowest-index rule for
both the entering and leaving choice. Phase one uses one artificial per row.
Sizes here are tiny, so nothing is factorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import INFEASIBLE, OPTIMAL, UNBOUNDED

MAX_PIVOTS = 100_000


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class LPProblem:
    a: tuple
    rhs: tuple
    objective: tuple
    lower: tuple
    upper: tuple  # entries may be None for +infinity

    @classmethod
    def build(cls, a, rhs, objective=None, lower=None, upper=None) -> "LPProblem":
        a = tuple(tuple(_frac(v) for v in row) for row in a)
        n = len(a[0]) if a else len(objective or lower or upper or ())
        if objective is None:
            objective = (0,) * n
        if lower is None:
            lower = (0,) * n
        if upper is None:
            upper = (None,) * n
        if any(len(row) != n for row in a) or len(rhs) != len(a):
            raise ValueError("inconsistent LP dimensions")
        if not (len(objective) == len(lower) == len(upper) == n):
            raise ValueError("inconsistent LP dimensions")
        return cls(a, tuple(_frac(v) for v in rhs), tuple(_frac(v) for v in objective),
                   tuple(_frac(v) for v in lower),
                   tuple(None if v is None else _frac(v) for v in upper))

    @property
    def n(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPVertex:
    point: tuple
    basis: frozenset
    objective_value: Fraction


@dataclass(frozen=True)
class LPOutcome:
    status: str
    vertex: Optional[LPVertex] = None

    @property
    def point(self):
        return self.vertex.point if self.vertex else None


class _Tableau:
    def __init__(self, rows, rhs, upper):
        k = len(rows)
        n = len(upper)
        self.n = n
        self.T = []
        self.beta = []
        for i, (row, r) in enumerate(zip(rows, rhs)):
            if r < 0:
                row = [-v for v in row]
                r = -r
            art = [Fraction(0)] * k
            art[i] = Fraction(1)
            self.T.append(list(row) + art)
            self.beta.append(r)
        self.upper = list(upper) + [None] * k
        self.basis = list(range(n, n + k))
        self.at_upper = set()
        self.blocked = set()
        self.pivots = 0

    def value(self, j):
        if j in self.at_upper:
            return self.upper[j]
        return Fraction(0)

    def run(self, cost) -> str:
        T, beta, basis, upper = self.T, self.beta, self.basis, self.upper
        ncols = len(upper)
        while True:
            in_basis = set(basis)
            entering = None
            for j in range(ncols):
                if j in in_basis or j in self.blocked or upper[j] == 0:
                    continue
                d = cost[j]
                for i, bi in enumerate(basis):
                    cb = cost[bi]
                    if cb and T[i][j]:
                        d -= cb * T[i][j]
                if (d > 0 and j not in self.at_upper) or (d < 0 and j in self.at_upper):
                    entering = j
                    break
            if entering is None:
                return OPTIMAL
            self.pivots += 1
            if self.pivots > MAX_PIVOTS:
                raise RuntimeError("simplex exceeded %d pivots" % MAX_PIVOTS)
            j = entering
            sgn = -1 if j in self.at_upper else 1
            # (limit, variable index, row); row None is a bound flip of j
            best = (upper[j], j, None) if upper[j] is not None else None
            for i, bi in enumerate(basis):
                alpha = sgn * T[i][j]
                if alpha > 0:
                    lim = beta[i] / alpha
                elif alpha < 0 and upper[bi] is not None:
                    lim = (upper[bi] - beta[i]) / -alpha
                else:
                    continue
                if best is None or (lim, bi) < best[:2]:
                    best = (lim, bi, i)
            if best is None:
                return UNBOUNDED
            step, _, leave = best
            for i in range(len(basis)):
                if T[i][j]:
                    beta[i] -= sgn * step * T[i][j]
            if leave is None:
                if sgn > 0:
                    self.at_upper.add(j)
                else:
                    self.at_upper.discard(j)
                continue
            r = leave
            out = basis[r]
            if sgn * T[r][j] < 0:
                self.at_upper.add(out)
            else:
                self.at_upper.discard(out)
            new_val = self.value(j) + sgn * step
            self.at_upper.discard(j)
            self._pivot(r, j)
            beta[r] = new_val
            basis[r] = j

    def _pivot(self, r, j):
        T = self.T
        prow = T[r]
        p = prow[j]
        if p != 1:
            prow[:] = [v / p for v in prow]
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]

    def point(self):
        x = [self.value(j) for j in range(self.n)]
        for i, bi in enumerate(self.basis):
            if bi < self.n:
                x[bi] = self.beta[i]
        return x


def _run(p: LPProblem, optimize: bool) -> LPOutcome:
    n = p.n
    shifted_upper = []
    for lo, up in zip(p.lower, p.upper):
        if up is None:
            shifted_upper.append(None)
        elif up < lo:
            return LPOutcome(INFEASIBLE)
        else:
            shifted_upper.append(up - lo)
    rhs = [r - sum(aij * lo for aij, lo in zip(row, p.lower)) for row, r in zip(p.a, p.rhs)]
    tab = _Tableau(p.a, rhs, shifted_upper)
    k = len(p.a)
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * k
    tab.run(phase1)
    if any(tab.beta[i] for i, bi in enumerate(tab.basis) if bi >= n):
        return LPOutcome(INFEASIBLE)
    # artificials are pinned to zero from here on
    for j in range(n, n + k):
        tab.upper[j] = Fraction(0)
        tab.blocked.add(j)
    if optimize:
        cost = list(p.objective) + [Fraction(0)] * k
        if tab.run(cost) == UNBOUNDED:
            return LPOutcome(UNBOUNDED)
    x = [xi + lo for xi, lo in zip(tab.point(), p.lower)]
    value = sum((ci * xi for ci, xi in zip(p.objective, x)), Fraction(0))
    basis = frozenset(bi for bi in tab.basis if bi < n)
    return LPOutcome(OPTIMAL, LPVertex(tuple(x), basis, value))


def solve_lp(p: LPProblem) -> LPOutcome:
    """Optimal vertex of ``p`` (maximization), or an infeasible/unbounded tag."""
    return _run(p, True)


def feasible_vertex(p: LPProblem) -> LPOutcome:
    """Any vertex of the feasible region of ``p``; the objective is ignored."""
    return _run(p, False)


def relaxation(inst) -> LPProblem:
    """LP relaxation of an :class:`~steinitz_ip.core.IPInstance`."""
    upper = inst.upper if inst.upper is not None else (None,) * inst.n
    return LPProblem.build(inst.a, inst.b, inst.c, (0,) * inst.n, upper)


def check_vertex(p: LPProblem, v: LPVertex) -> None:
    """Raise AssertionError unless ``v`` is a basic feasible point of ``p``."""
    x = v.point
    for row, r in zip(p.a, p.rhs):
        assert sum(aij * xj for aij, xj in zip(row, x)) == r, "equality violated"
    between = 0
    for j, (xj, lo, up) in enumerate(zip(x, p.lower, p.upper)):
        assert xj >= lo and (up is None or xj <= up), "bound violated at %d" % j
        at_bound = xj == lo or (up is not None and xj == up)
        if j not in v.basis:
            assert at_bound, "nonbasic %d is not at a bound" % j
        if not at_bound:
            between += 1
    assert between <= len(p.a), "too many coordinates strictly inside their bounds"
