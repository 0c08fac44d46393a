"""Equality knapsack ``max {c.x : a.x = beta, 0 <= x (<= u)}`` with positive weights.

Both solvers round an LP vertex and then run a dynamic program whose table
is indexed by the residual capacity. For one constraint the proximity bound
is ``2*Delta_a + 1``, which keeps the table size ``O(Delta_a**2)``
(unbounded) or ``O(n * Delta_a**2)`` (bounded).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional

from .core import IPInstance, PreconditionViolated, SolveOutcome, validate
from .proximity import binary_expand


@dataclass(frozen=True)
class KnapsackInstance:
    weights: tuple
    profits: tuple
    beta: int
    upper: Optional[tuple] = None

    def __post_init__(self):
        if not self.weights or len(self.weights) != len(self.profits):
            raise PreconditionViolated("weights and profits must be nonempty and aligned")
        if any(a < 1 for a in self.weights):
            raise PreconditionViolated("knapsack weights must be positive")
        if self.beta < 1:
            raise PreconditionViolated("capacity must be positive")
        if self.upper is not None and (len(self.upper) != len(self.weights)
                                       or any(u < 0 for u in self.upper)):
            raise PreconditionViolated("bad upper bounds")

    @property
    def delta_a(self) -> int:
        return max(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    @classmethod
    def from_instance(cls, inst: IPInstance) -> "KnapsackInstance":
        if inst.m != 1:
            raise PreconditionViolated("knapsack needs exactly one constraint row")
        return cls(tuple(inst.a[0]), tuple(inst.c), inst.b[0], inst.upper)

    def to_instance(self) -> IPInstance:
        return validate([self.weights], [self.beta], self.profits, self.upper)


def with_slack(k: KnapsackInstance) -> KnapsackInstance:
    """Turn ``a.x <= beta`` into an equality by a unit-weight, zero-profit item."""
    upper = None if k.upper is None else k.upper + (k.beta,)
    return KnapsackInstance(k.weights + (1,), k.profits + (0,), k.beta, upper)


def best_ratio_item(k: KnapsackInstance) -> int:
    """Index maximizing ``c_i / a_i``; lowest index on ties."""
    best = 0
    for i in range(1, k.n):
        if k.profits[i] * k.weights[best] > k.profits[best] * k.weights[i]:
            best = i
    return best


def _unbounded_table(items, capacity):
    """Exact-capacity unbounded knapsack over ``items = [(weight, profit, index)]``."""
    NONE = None
    best = [NONE] * (capacity + 1)
    pick = [-1] * (capacity + 1)
    best[0] = 0
    for v in range(1, capacity + 1):
        bv, bp = NONE, -1
        for w, p, idx in items:
            if w > v:
                continue
            prev = best[v - w]
            if prev is NONE:
                continue
            cand = prev + p
            if bv is NONE or cand > bv:
                bv, bp = cand, idx
        best[v], pick[v] = bv, bp
    return best, pick


def solve_unbounded_knapsack(k: KnapsackInstance, stats=None) -> SolveOutcome:
    """Exact unbounded knapsack in ``O(n * Delta_a**2)``.

    The LP optimum puts ``beta / a_r`` on the best-ratio item ``r``. Some
    integer optimum is within ``2*Delta_a + 1`` of it in l1, so it uses at
    least ``floor(beta / a_r) - (2*Delta_a + 1)`` copies of ``r``. Those are
    fixed and a table of size ``< (2*Delta_a + 2) * Delta_a`` solves the rest.
    """
    if k.upper is not None and any(u < k.beta for u in k.upper):
        raise PreconditionViolated("upper bounds present; use solve_bounded_knapsack")
    if stats is None:
        stats = {}
    inst = KnapsackInstance(k.weights, k.profits, k.beta).to_instance()
    da = k.delta_a
    r = best_ratio_item(k)
    reach = 2 * da + 1
    shift = 0
    if k.beta > reach * da:
        shift = k.beta // k.weights[r] - reach
    capacity = k.beta - shift * k.weights[r]
    # only the best profit per distinct weight can matter
    by_weight = {}
    for i, (w, p) in enumerate(zip(k.weights, k.profits)):
        if w not in by_weight or p > by_weight[w][1]:
            by_weight[w] = (w, p, i)
    items = sorted(by_weight.values())
    best, pick = _unbounded_table(items, capacity)
    stats.update(nodes_explored=capacity + 1, arcs_relaxed=(capacity + 1) * len(items),
                 shift=shift, residual_capacity=capacity)
    if best[capacity] is None:
        return SolveOutcome.infeasible(stats)
    x = [0] * k.n
    x[r] += shift
    v = capacity
    while v:
        i = pick[v]
        x[i] += 1
        v -= k.weights[i]
    return SolveOutcome.optimal(inst, x, stats)


def lp_vertex(k: KnapsackInstance):
    """Greedy optimal LP vertex of the bounded equality knapsack, or ``None``."""
    order = sorted(range(k.n), key=lambda i: (-Fraction(k.profits[i], k.weights[i]), i))
    x = [Fraction(0)] * k.n
    left = Fraction(k.beta)
    for i in order:
        if left == 0:
            break
        take = min(Fraction(k.upper[i]), left / k.weights[i])
        x[i] = take
        left -= take * k.weights[i]
    if left:
        return None
    return tuple(x)


def solve_bounded_knapsack(k: KnapsackInstance, stats=None) -> SolveOutcome:
    """Exact bounded knapsack via the proximity box around the LP vertex.

    With ``y = x - floor(x*)`` in ``[-l, u]`` (both at most ``2*Delta_a + 1``)
    and ``w = y + l``, the residual program is a 0/1 knapsack over binary
    copies of each item with capacity ``beta' + sum a_i l_i = O(n Delta_a**2)``.
    """
    if k.upper is None:
        raise PreconditionViolated("solve_bounded_knapsack needs upper bounds")
    if stats is None:
        stats = {}
    inst = k.to_instance()
    x_lp = lp_vertex(k)
    if x_lp is None:
        stats.update(nodes_explored=0, arcs_relaxed=0)
        return SolveOutcome.infeasible(stats)
    # one fractional coordinate at most, so |z - floor(x*)|_1 < L1 + 1
    L = 2 * k.delta_a + 1
    fl = [floor(v) for v in x_lp]
    lower = [min(L, f) for f in fl]
    upper = [min(L, u - f) for u, f in zip(k.upper, fl)]
    residual = k.beta - sum(a * f for a, f in zip(k.weights, fl))
    capacity = residual + sum(a * l for a, l in zip(k.weights, lower))
    copies = []
    for i in range(k.n):
        for d in binary_expand(0, lower[i] + upper[i]).coefficients:
            copies.append((k.weights[i] * d, k.profits[i] * d, i, d))
    best = [None] * (capacity + 1)
    best[0] = 0
    took = []
    for w, p, _, _ in copies:
        flags = bytearray(capacity + 1)
        for v in range(capacity, w - 1, -1):
            prev = best[v - w]
            if prev is not None and (best[v] is None or prev + p > best[v]):
                best[v] = prev + p
                flags[v] = 1
        took.append(flags)
    stats.update(nodes_explored=capacity + 1, arcs_relaxed=(capacity + 1) * len(copies),
                 residual_capacity=capacity, copies=len(copies))
    if best[capacity] is None:
        return SolveOutcome.infeasible(stats)
    w_sol = [0] * k.n
    v = capacity
    for (w, _, i, d), flags in zip(reversed(copies), reversed(took)):
        if flags[v]:
            w_sol[i] += d
            v -= w
    x = [f - l + wi for f, l, wi in zip(fl, lower, w_sol)]
    return SolveOutcome.optimal(inst, x, stats)
