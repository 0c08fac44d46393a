"""Proximity bounds and the layered-DAG solver for bounded-variable programs.

For ``max {c.x : A x = b, 0 <= x <= u}`` with an optimal LP vertex ``x*``
there is an integer optimum ``z*`` with ``|z* - x*|_1 <= m (2 m Delta + 1)^m``.
:func:`solve_bounded` exploits it: write ``z = floor(x*) + y`` with ``y``
small, expand every ``y_i`` into 0/1 variables with power-of-two weights,
and find a longest path through one layer per 0/1 variable. Layer states
are the partial values of ``A y``, restricted to a max-norm ball.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor, isqrt

from .core import IPInstance, PreconditionViolated, SolveOutcome
from .lp import relaxation, solve_lp


def l1_bound(m: int, delta: int) -> int:
    """``m * (2*m*delta + 1)**m``."""
    return m * (2 * m * delta + 1) ** m


def _ceil_pow_half(m: int) -> int:
    """``ceil(m ** (m / 2))`` computed exactly."""
    if m % 2 == 0:
        return m ** (m // 2)
    p = m ** m
    r = isqrt(p)
    return r if r * r == p else r + 1


def cook_l1_bound(n: int, m: int, delta: int) -> int:
    """``n**2 * ceil(m**(m/2)) * delta**m``, the classical bound for comparison."""
    return n * n * _ceil_pow_half(m) * delta ** m


def gap_bound(c_inf_norm: int, m: int, delta: int) -> int:
    """Bound on ``c.x* - c.z*``; the sharper ``2*|c|*delta`` when ``m == 1``."""
    if m == 1:
        return 2 * c_inf_norm * delta
    return c_inf_norm * l1_bound(m, delta)


@dataclass(frozen=True)
class ProximityBudget:
    m: int
    delta: int

    @property
    def l1_budget(self) -> int:
        return l1_bound(self.m, self.delta)


@dataclass(frozen=True)
class ReducedInstance:
    """``max c.y : A y = rhs, -lower_star <= y <= upper_star``; ``z = floor_point + y``."""

    base: IPInstance
    floor_point: tuple
    rhs: tuple
    lower_star: tuple
    upper_star: tuple
    l1_budget: int
    objective_offset: int

    def lift(self, y) -> tuple:
        return tuple(f + yi for f, yi in zip(self.floor_point, y))


def working_budget(inst: IPInstance) -> int:
    # floor(x*) is off from x* by < 1 in at most m coordinates
    return l1_bound(inst.m, inst.delta) + inst.m


def reduce(inst: IPInstance, vertex, budget=None) -> ReducedInstance:
    """Shift ``inst`` to the box around ``floor(x*)`` given the LP vertex ``x*``."""
    if inst.upper is None:
        raise PreconditionViolated("reduce needs variable upper bounds")
    point = vertex.point if hasattr(vertex, "point") else vertex
    L = working_budget(inst) if budget is None else budget
    fl = tuple(floor(v) for v in point)
    rhs = inst.residual(fl)
    lower = tuple(min(L, f) for f in fl)
    upper = tuple(min(L, u - f) for u, f in zip(inst.upper, fl))
    if any(v < 0 or v > L for v in lower + upper):
        raise AssertionError("reduced bounds outside [0, %d]" % L)
    return ReducedInstance(inst, fl, rhs, lower, upper, L, inst.objective(fl))


@dataclass(frozen=True)
class BinaryExpansion:
    """``shift + sum(d * bit)`` ranges over exactly ``[-l, u]``."""

    shift: int
    coefficients: tuple

    def values(self) -> set:
        sums = {0}
        for d in self.coefficients:
            sums |= {s + d for s in sums}
        return {self.shift + s for s in sums}


def binary_expand(l: int, u: int) -> BinaryExpansion:
    """Powers ``1, 2, ..., 2**(k-1)`` plus the remainder ``R - (2**k - 1)``, ``R = l + u``."""
    if l < 0 or u < 0:
        raise ValueError("l and u must be nonnegative")
    R = l + u
    k = (R + 1).bit_length() - 1  # largest k with 2**k - 1 <= R
    coeffs = [1 << i for i in range(k)]
    rest = R - ((1 << k) - 1)
    if rest:
        coeffs.append(rest)
    return BinaryExpansion(-l, tuple(coeffs))


def ball_radius(inst: IPInstance) -> int:
    """Max-norm radius of the layer states: ``delta * (3*L1 + m + 1)``."""
    return inst.delta * (3 * l1_bound(inst.m, inst.delta) + inst.m + 1)


def layered_longest_path(red: ReducedInstance, radius=None, stats=None):
    """Best ``y`` for the reduced program, or ``None`` if no path reaches ``rhs``.

    Variables are processed in index order; each block starts with one
    mandatory arc for the shift ``-lower_star[i]`` and then has one layer per
    coefficient, largest first, with a skip arc and a take arc.
    """
    inst = red.base
    if radius is None:
        radius = ball_radius(inst)
    cols = inst.columns()
    c = inst.c
    origin = (0,) * inst.m
    # state -> (value, back-pointer into the history list)
    layer = {origin: (0, -1)}
    history = []  # (variable, step, previous history index)
    layers = 0
    max_width = 1
    total = 1
    arcs = 0
    for i, col in enumerate(cols):
        exp = binary_expand(red.lower_star[i], red.upper_star[i])
        steps = [exp.shift] + sorted(exp.coefficients, reverse=True)
        for pos, step in enumerate(steps):
            layers += 1
            mandatory = pos == 0
            nxt = {}
            for point, (val, h) in layer.items():
                options = [(step, True)] if mandatory else [(0, False), (step, True)]
                for s, took in options:
                    arcs += 1
                    q = tuple(pk + s * ck for pk, ck in zip(point, col)) if s else point
                    if any(abs(v) > radius for v in q):
                        continue
                    cand = val + s * c[i]
                    cur = nxt.get(q)
                    if cur is None or cand > cur[0]:
                        if took and s:
                            history.append((i, s, h))
                            nxt[q] = (cand, len(history) - 1)
                        else:
                            nxt[q] = (cand, h)
            layer = nxt
            max_width = max(max_width, len(layer))
            total += len(layer)
    if stats is not None:
        stats.update(layers=layers, nodes_explored=total, max_layer_width=max_width,
                     arcs_relaxed=arcs)
    end = layer.get(tuple(red.rhs))
    if end is None:
        return None
    y = [0] * inst.n
    h = end[1]
    while h != -1:
        i, s, h = history[h]
        y[i] += s
    return tuple(y), end[0]


def solve_bounded(inst: IPInstance) -> SolveOutcome:
    """Solve ``max {c.x : A x = b, 0 <= x <= u, x integral}``."""
    if inst.upper is None:
        raise PreconditionViolated("solve_bounded needs variable upper bounds")
    stats = {}
    lp = solve_lp(relaxation(inst))
    if lp.vertex is None:
        return SolveOutcome.infeasible(stats)
    red = reduce(inst, lp.vertex)
    found = layered_longest_path(red, stats=stats)
    if found is None:
        return SolveOutcome.infeasible(stats)
    y, value = found
    out = SolveOutcome.optimal(inst, red.lift(y), stats)
    assert out.value == value + red.objective_offset
    return out
