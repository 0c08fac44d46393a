"""Brute-force ground truth for small integer programs.

Nothing here shares code with the dynamic programs. Points are enumerated
exhaustively over a finite box with numpy; one coordinate per point is
solved from an equality row instead of looped over, which visits the same
set of box points.

:func:`reference_solve` turns the box search into a full classifier for
programs without upper bounds. The box comes from the proximity theorem of
Cook, Gerards, Schrijver and Tardos: a feasible bounded program has an
optimum within max-norm ``n * delta`` of any optimal LP vertex, where
``delta`` is the largest subdeterminant of ``A``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .core import IPInstance, SolveOutcome
from .lp import LPProblem, relaxation, solve_lp

DEFAULT_CAP = 10 ** 7
_INT64_SAFE = 2 ** 62


class BoxTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBox:
    """Inclusive per-variable upper limits; every lower limit is 0."""

    limits: tuple

    def __post_init__(self):
        if any(v < 0 for v in self.limits):
            raise ValueError("box limits must be nonnegative")


def _effective_limits(inst: IPInstance, box) -> list:
    if box is None:
        if inst.upper is None:
            raise ValueError("a box is required for instances without upper bounds")
        return list(inst.upper)
    limits = list(box.limits if isinstance(box, EnumerationBox) else box)
    if len(limits) != inst.n or any(v < 0 for v in limits):
        raise ValueError("box does not match the instance")
    if inst.upper is not None:
        limits = [min(a, u) for a, u in zip(limits, inst.upper)]
    return limits


def _feasible_points(inst: IPInstance, limits, cap):
    """Yield int64 arrays (rows = points) of all box points with ``A x = b``."""
    A = inst.a
    n = inst.n
    # solve for the last column that has a nonzero entry
    solved = None
    for j in reversed(range(n)):
        rows = [r for r in range(inst.m) if A[r][j]]
        if rows:
            solved, srow = j, rows[0]
            break
    free = [j for j in range(n) if j != solved]
    size = 1
    for j in free:
        size *= limits[j] + 1
    if size > cap:
        raise BoxTooLarge("box has %d points to enumerate (cap %d)" % (size, cap))
    scale = max([abs(v) for row in A for v in row] + [1]) * (max(limits + [1]) + 1) * (n + 1)
    if scale + max(abs(v) for v in inst.b) >= _INT64_SAFE:
        raise BoxTooLarge("entries too large for exact int64 enumeration")
    Am = np.array(A, dtype=np.int64).reshape(inst.m, n)
    bv = np.array(inst.b, dtype=np.int64)
    if not free:
        chunks = [np.zeros((1, 0), dtype=np.int64)]
    else:
        head, rest = free[0], free[1:]
        rest_grid = np.array(list(itertools.product(*[range(limits[j] + 1) for j in rest])),
                             dtype=np.int64).reshape(-1, len(rest)) if rest else \
            np.zeros((1, 0), dtype=np.int64)
        chunks = (np.hstack([np.full((len(rest_grid), 1), v, dtype=np.int64), rest_grid])
                  for v in range(limits[head] + 1))
    for grid in chunks:
        X = np.zeros((grid.shape[0], n), dtype=np.int64)
        X[:, free] = grid
        if solved is not None:
            a = A[srow][solved]
            resid = bv[srow] - X @ Am[srow]
            ok = resid % abs(a) == 0
            xs = resid // a
            ok &= (xs >= 0) & (xs <= limits[solved])
            X = X[ok]
            X[:, solved] = xs[ok]
        good = np.all(X @ Am.T == bv, axis=1)
        if good.any():
            yield X[good]


def enumerate_optima(inst: IPInstance, box=None, cap=DEFAULT_CAP) -> list:
    """All optimal points of ``inst`` inside the box, in lexicographic order."""
    limits = _effective_limits(inst, box)
    c = np.array(inst.c, dtype=np.int64)
    best = None
    found = []
    for X in _feasible_points(inst, limits, cap):
        vals = X @ c
        top = int(vals.max())
        if best is None or top > best:
            best, found = top, []
        if top == best:
            found.extend(tuple(int(v) for v in row) for row in X[vals == top])
    return sorted(found)


def brute_force_solve(inst: IPInstance, box=None, cap=DEFAULT_CAP) -> SolveOutcome:
    """Best point of ``inst`` within the box (lexicographically smallest on ties)."""
    optima = enumerate_optima(inst, box, cap)
    if not optima:
        return SolveOutcome.infeasible()
    return SolveOutcome.optimal(inst, optima[0])


def lp_ray_exists(inst: IPInstance) -> bool:
    """Is there ``r >= 0`` with ``A r = 0`` and ``c.r > 0``?

    Decided as ``max {c.r : A r = 0, 0 <= r <= 1} > 0``; a rational ray
    scales to an integral one.
    """
    if not any(inst.c):
        return False
    p = LPProblem.build(inst.a, (0,) * inst.m, inst.c, (0,) * inst.n, (1,) * inst.n)
    out = solve_lp(p)
    return out.vertex.objective_value > 0


def _det(rows) -> int:
    """Determinant of a small integer matrix (Bareiss elimination)."""
    M = [list(r) for r in rows]
    k = len(M)
    sign, prev = 1, 1
    for i in range(k - 1):
        if M[i][i] == 0:
            for r in range(i + 1, k):
                if M[r][i]:
                    M[i], M[r] = M[r], M[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for s in range(i + 1, k):
                M[r][s] = (M[r][s] * M[i][i] - M[r][i] * M[i][s]) // prev
        prev = M[i][i]
    return sign * M[-1][-1]


def max_subdeterminant(a) -> int:
    """Largest absolute determinant over all square submatrices (at least 1)."""
    m, n = len(a), len(a[0])
    best = 1
    for k in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                d = abs(_det([[a[r][c] for c in cols] for r in rows]))
                if d > best:
                    best = d
    return best


def default_box(inst: IPInstance):
    """Box for nonnegative ``A``: ``ceil(|b|_1 / min nonzero |a_ij|)`` per variable.

    Returns ``None`` when ``A`` has a negative entry. Zero columns get limit 0.
    """
    if inst.upper is not None:
        return EnumerationBox(tuple(inst.upper))
    if any(v < 0 for row in inst.a for v in row):
        return None
    nz = [v for row in inst.a for v in row if v]
    if not nz:
        return EnumerationBox((0,) * inst.n)
    lim = -(-sum(abs(v) for v in inst.b) // min(nz))
    return EnumerationBox(tuple(lim if any(inst.column(j)) else 0 for j in range(inst.n)))


def cook_box(inst: IPInstance, point) -> EnumerationBox:
    """``[0, floor(x_j) + n*delta]`` around an LP optimum ``point``."""
    radius = inst.n * max_subdeterminant(inst.a)
    return EnumerationBox(tuple(max(0, floor(Fraction(v)) + radius) for v in point))


def reference_solve(inst: IPInstance, cap=DEFAULT_CAP) -> SolveOutcome:
    """Exact status and optimum of a small program by box enumeration."""
    if inst.upper is not None:
        return brute_force_solve(inst, None, cap)
    zero = IPInstance(inst.a, inst.b, (0,) * inst.n, None, inst.delta)
    first = solve_lp(relaxation(zero))
    if first.vertex is None:
        return SolveOutcome.infeasible()
    if brute_force_solve(zero, cook_box(inst, first.vertex.point), cap).status != "optimal":
        return SolveOutcome.infeasible()
    if lp_ray_exists(inst):
        return SolveOutcome.unbounded()
    best = solve_lp(relaxation(inst))
    return brute_force_solve(inst, cook_box(inst, best.vertex.point), cap)
