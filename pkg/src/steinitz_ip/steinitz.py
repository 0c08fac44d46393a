"""Constructive Steinitz rearrangement in the max-norm with constant ``m``.

Given zero-sum vectors ``x_1..x_n`` in dimension ``m`` with
``|x_i|_inf <= B``, :func:`steinitz_reorder` returns an order whose every
prefix sum has max-norm at most ``m * B``.

The order is built back to front. Starting from ``S = {all indices}``, as
long as ``|S| = k > m`` we take a vertex ``lam`` of

    sum_{i in S} lam_i x_i = 0,   sum_{i in S} lam_i = k - 1 - m,   0 <= lam <= 1

which has at most ``m + 1`` fractional entries, hence some ``lam_i = 0``.
That index goes to position ``k`` and leaves ``S``. For every ``k >= m`` the
prefix of length ``k`` is then ``sum_{S}(1 - lam_i) x_i``, whose norm is at
most ``m * B``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lp import LPProblem, feasible_vertex


class InvalidInput(ValueError):
    pass


class SteinitzInternalError(AssertionError):
    pass


def _norm(v, norm="inf"):
    if norm in ("inf", "linf"):
        return max((abs(x) for x in v), default=Fraction(0))
    if norm in (1, "1", "l1"):
        return sum((abs(x) for x in v), Fraction(0))
    raise ValueError("unsupported norm %r" % (norm,))


def _prepare(vectors, norm_bound):
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vecs:
        raise InvalidInput("need at least one vector")
    m = len(vecs[0])
    if m == 0 or any(len(v) != m for v in vecs):
        raise InvalidInput("vectors must share a positive dimension")
    if any(sum(v[k] for v in vecs) != 0 for k in range(m)):
        raise InvalidInput("vectors do not sum to zero")
    actual = max(_norm(v) for v in vecs)
    if norm_bound is None:
        norm_bound = actual
    norm_bound = Fraction(norm_bound)
    if actual > norm_bound:
        raise InvalidInput("a vector exceeds norm_bound %s" % norm_bound)
    return vecs, m, norm_bound


def carrier_system(vectors, active: Sequence[int], total) -> LPProblem:
    """The LP ``sum lam_i x_i = 0, sum lam_i = total, 0 <= lam <= 1`` over ``active``."""
    m = len(vectors[0])
    rows = [[vectors[i][k] for i in active] for k in range(m)]
    rows.append([1] * len(active))
    rhs = [0] * m + [total]
    k = len(active)
    return LPProblem.build(rows, rhs, lower=[0] * k, upper=[1] * k)


def steinitz_reorder(vectors, norm_bound=None, trace=None) -> list:
    """Return a 0-based permutation with all prefix sums of max-norm ``<= m*norm_bound``.

    ``norm_bound`` defaults to the largest max-norm among ``vectors``. If
    ``trace`` is a list, one ``(k, removed_index, vertex)`` tuple is appended
    per shrink step.
    """
    vecs, m, _ = _prepare(vectors, norm_bound)
    n = len(vecs)
    if n <= m:
        return list(range(n))
    order = [None] * n
    active = list(range(n))
    for k in range(n, m, -1):
        out = feasible_vertex(carrier_system(vecs, active, k - 1 - m))
        if out.vertex is None:
            raise SteinitzInternalError("carrier system infeasible at k=%d" % k)
        lam = out.vertex.point
        zeros = [pos for pos, v in enumerate(lam) if v == 0]
        if not zeros:
            raise SteinitzInternalError("vertex at k=%d has no zero entry" % k)
        removed = active.pop(zeros[0])
        order[k - 1] = removed
        if trace is not None:
            trace.append((k, removed, lam))
    order[:m] = sorted(active)
    return order


def prefix_sums(vectors, order):
    m = len(vectors[0])
    s = [Fraction(0)] * m
    out = []
    for i in order:
        s = [a + Fraction(b) for a, b in zip(s, vectors[i])]
        out.append(tuple(s))
    return out


def max_prefix_norm(vectors, order, norm="inf") -> Fraction:
    """Largest norm over the prefix sums of ``vectors`` taken in ``order``."""
    if sorted(order) != list(range(len(vectors))):
        raise ValueError("order is not a permutation of the vector indices")
    return max((_norm(p, norm) for p in prefix_sums(vectors, order)), default=Fraction(0))
