"""Dynamic programs over the Steinitz tube for ``max {c.x : A x = b, x >= 0}``.

A solution ``z`` is a multiset of columns of ``A`` summing to ``b``. Ordered
as in the Steinitz lemma, the walk ``0 -> ... -> b`` of partial sums never
leaves the tube of lattice points near the segment ``[0, b]``, so the
program reduces to reachability (:func:`feasible`) or a longest walk
(:func:`solve_standard_form`, :func:`solve_acyclic`) in an implicit digraph
whose nodes are tube points and whose arcs add a single column.

Tube radius
-----------
For a walk of ``t`` columns the shifted steps ``v_i - b/t`` satisfy
``|v_ik - b_k/t| <= Delta + |b_k|/t``. Applying the lemma (constant ``m``)
in the norm weighted per coordinate by those bounds gives, for some order,
``|p_jk - (j/t) b_k| <= m*Delta + m*|b_k|/t``. When ``t <= m`` every partial
sum already has ``|p_jk| <= m*Delta`` (take ``lambda = 0``); otherwise
``t >= m + 1``. Since also ``|b_k| <= t*Delta``, radius

    r_k = m*Delta + min(m*Delta, m*|b_k| / (m + 1))

per coordinate suffices. It never exceeds the uniform ``2*m*Delta``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import IPInstance, PreconditionViolated, SolveOutcome, l1_norm


@dataclass(frozen=True)
class TubeSpec:
    """Lattice points ``x`` with ``|x_k - lam*b_k| <= radius_k`` for one ``lam`` in [0, 1]."""

    b: tuple
    radius: tuple

    @classmethod
    def uniform(cls, b, radius) -> "TubeSpec":
        return cls(tuple(b), (Fraction(radius),) * len(b))

    @classmethod
    def for_instance(cls, inst: IPInstance, b=None, kind="tight") -> "TubeSpec":
        """Tube for ``inst`` (``kind`` is "tight" or "uniform" = ``2*m*Delta``)."""
        b = tuple(inst.b if b is None else b)
        m, d = inst.m, inst.delta
        if kind == "uniform":
            return cls.uniform(b, 2 * m * d)
        if kind != "tight":
            raise ValueError("unknown tube kind %r" % kind)
        return cls(b, tuple(m * d + min(Fraction(m * d), Fraction(m * abs(bk), m + 1))
                            for bk in b))

    def contains(self, x) -> bool:
        return tube_contains(x, self)


def tube_contains(x, spec: TubeSpec) -> bool:
    """Exact membership test by intersecting per-coordinate ``lam`` intervals."""
    lo, hi = Fraction(0), Fraction(1)
    for xk, bk, rk in zip(x, spec.b, spec.radius):
        if bk == 0:
            if abs(xk) > rk:
                return False
            continue
        a, c = Fraction(xk - rk, bk), Fraction(xk + rk, bk)
        if a > c:
            a, c = c, a
        if a > lo:
            lo = a
        if c < hi:
            hi = c
        if lo > hi:
            return False
    return True


class _Membership:
    """Cached integer-only version of :func:`tube_contains`."""

    def __init__(self, spec: TubeSpec, box=None):
        self.den = 1
        for r in spec.radius:
            self.den = self.den * r.denominator // _gcd(self.den, r.denominator)
        self.b = spec.b
        self.rad = [int(r * self.den) for r in spec.radius]
        self.box = box
        self.cache = {}

    def __call__(self, x) -> bool:
        hit = self.cache.get(x)
        if hit is not None:
            return hit
        self.cache[x] = res = self._check(x)
        return res

    def _check(self, x) -> bool:
        if self.box is not None:
            for xk, (blo, bhi) in zip(x, self.box):
                if xk < blo or xk > bhi:
                    return False
        D = self.den
        # lam in [lo_n/lo_d, hi_n/hi_d], denominators positive
        lo_n, lo_d, hi_n, hi_d = 0, 1, 1, 1
        for xk, bk, rk in zip(x, self.b, self.rad):
            if bk == 0:
                if abs(xk) * D > rk:
                    return False
                continue
            if bk < 0:
                xk, bk = -xk, -bk
            den = D * bk
            a, c = D * xk - rk, D * xk + rk
            if a * lo_d > lo_n * den:
                lo_n, lo_d = a, den
            if c * hi_d < hi_n * den:
                hi_n, hi_d = c, den
            if lo_n * hi_d > hi_n * lo_d:
                return False
        return True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def node_count_bound(m: int, delta: int, b) -> int:
    """``(4*m*Delta + 1)**m * max(|b|_1, 1)``: size bound for the tube digraph."""
    return (4 * m * delta + 1) ** m * max(l1_norm(b), 1)


def _split_zero_columns(inst: IPInstance):
    cols = inst.columns()
    live = [j for j, col in enumerate(cols) if any(col)]
    return cols, live


def _require_standard(inst: IPInstance):
    if inst.upper is not None:
        raise PreconditionViolated("variable upper bounds present; use the proximity solver")


class NodeStore:
    """Lattice point -> node id, with per-node parent, arc column and value."""

    def __init__(self, m: int):
        self.origin = (0,) * m
        self.index = {self.origin: 0}
        self.points = [self.origin]
        self.parent = [-1]
        self.arc = [-1]
        self.value = [0]

    def __len__(self):
        return len(self.points)

    def __contains__(self, point):
        return point in self.index

    def add(self, point, parent, arc, value=None) -> int:
        nid = len(self.points)
        self.index[point] = nid
        self.points.append(point)
        self.parent.append(parent)
        self.arc.append(arc)
        self.value.append(value)
        return nid

    def walk_counts(self, nid: int, n: int) -> list:
        """Multiplicity of each column along the parent chain from the origin to ``nid``."""
        x = [0] * n
        seen = 0
        while nid != 0:
            x[self.arc[nid]] += 1
            nid = self.parent[nid]
            seen += 1
            if seen > len(self.points):
                raise AssertionError("parent pointers contain a cycle")
        return x


def _bfs(inst: IPInstance, cols, live, member, target=None):
    """Breadth-first search of the tube from the origin; stops early at ``target``."""
    store = NodeStore(inst.m)
    queue = deque([0])
    arcs = 0
    while queue:
        nid = queue.popleft()
        p = store.points[nid]
        if p == target:
            break
        for j in live:
            col = cols[j]
            q = tuple(pk + ck for pk, ck in zip(p, col))
            arcs += 1
            if q in store.index or not member(q):
                continue
            store.add(q, nid, j)
            queue.append(len(store) - 1)
            if q == target:
                queue.clear()
                break
    return store, arcs


def feasible(inst: IPInstance, tube="tight", stats=None) -> Optional[tuple]:
    """Some ``z >= 0`` integral with ``A z = b``, or ``None`` if there is none."""
    _require_standard(inst)
    if stats is None:
        stats = {}
    b = tuple(inst.b)
    if not any(b):
        stats.update(nodes_explored=1, arcs_relaxed=0)
        return (0,) * inst.n
    cols, live = _split_zero_columns(inst)
    member = _Membership(TubeSpec.for_instance(inst, kind=tube))
    store, arcs = _bfs(inst, cols, live, member, target=b)
    stats.update(nodes_explored=len(store), arcs_relaxed=arcs)
    nid = store.index.get(b)
    if nid is None:
        return None
    return tuple(store.walk_counts(nid, inst.n))


def _parent_cycle(parent) -> bool:
    """True if the parent pointers (``-1`` = root) contain a cycle."""
    state = [0] * len(parent)  # 0 new, 1 on current chain, 2 done
    for start in range(len(parent)):
        if state[start]:
            continue
        chain = []
        v = start
        while v != -1 and state[v] == 0:
            state[v] = 1
            chain.append(v)
            v = parent[v]
        if v != -1 and state[v] == 1:
            return True
        for u in chain:
            state[u] = 2
    return False


def solve_standard_form(inst: IPInstance, tube="tight") -> SolveOutcome:
    """Solve ``max {c.x : A x = b, x >= 0 integral}`` by longest walks in the tube.

    Feasibility is decided first. Bellman-Ford then runs from the origin over
    the reachable tube nodes; a cycle in the predecessor graph, or an arc
    that still relaxes after ``|nodes|`` rounds, certifies a reachable cycle
    of positive weight and hence an unbounded program.
    """
    _require_standard(inst)
    stats = {}
    z = feasible(inst, tube, stats)
    if z is None:
        return SolveOutcome.infeasible(stats)
    cols, live = _split_zero_columns(inst)
    if any(inst.c[j] > 0 for j in range(inst.n) if j not in live):
        return SolveOutcome.unbounded(stats)
    member = _Membership(TubeSpec.for_instance(inst, kind=tube))
    store, arcs = _bfs(inst, cols, live, member)
    N = len(store)
    # adjacency over reachable nodes, fixed order: node id, then column
    succ = []
    for p in store.points:
        out = []
        for j in live:
            q = tuple(pk + ck for pk, ck in zip(p, cols[j]))
            qid = store.index.get(q)
            if qid is not None:
                out.append((qid, j, inst.c[j]))
        succ.append(out)
    NEG = None
    val = [NEG] * N
    val[0] = 0
    parent = [-1] * N
    arc = [-1] * N
    active = [0]
    relaxed = 0
    rounds = 0
    while active:
        rounds += 1
        if rounds > N:
            return SolveOutcome.unbounded(dict(stats, nodes_explored=N, arcs_relaxed=relaxed + arcs))
        changed = []
        mark = set()
        for u in active:
            vu = val[u]
            for v, j, w in succ[u]:
                relaxed += 1
                cand = vu + w
                if val[v] is NEG or cand > val[v]:
                    val[v] = cand
                    parent[v] = u
                    arc[v] = j
                    if v not in mark:
                        mark.add(v)
                        changed.append(v)
        changed.sort()
        if changed and _parent_cycle(parent):
            return SolveOutcome.unbounded(dict(stats, nodes_explored=N, arcs_relaxed=relaxed + arcs))
        active = changed
    store.parent, store.arc = parent, arc
    target = store.index[tuple(inst.b)]
    x = store.walk_counts(target, inst.n)
    stats = dict(stats, nodes_explored=N, arcs_relaxed=relaxed + arcs, rounds=rounds)
    out = SolveOutcome.optimal(inst, x, stats)
    assert out.value == val[target]
    return out


def solve_acyclic(inst: IPInstance, tube="tight") -> SolveOutcome:
    """Single topological pass for nonnegative ``A``.

    Zero columns are handled here: one with positive cost makes a feasible
    program unbounded, the others are fixed at zero.
    """
    _require_standard(inst)
    if any(v < 0 for row in inst.a for v in row):
        raise PreconditionViolated("solve_acyclic needs a nonnegative constraint matrix")
    cols, live = _split_zero_columns(inst)
    b = tuple(inst.b)
    if any(bk < 0 for bk in b):
        return SolveOutcome.infeasible(dict(nodes_explored=1, arcs_relaxed=0))
    # partial sums of nonnegative columns stay inside the box [0, b]
    member = _Membership(TubeSpec.for_instance(inst, kind=tube),
                         box=[(0, bk) for bk in b])
    store, arcs = _bfs(inst, cols, live, member)
    stats = dict(nodes_explored=len(store))
    target = store.index.get(b)
    if target is None:
        return SolveOutcome.infeasible(dict(stats, arcs_relaxed=arcs))
    if any(inst.c[j] > 0 for j in range(inst.n) if j not in live):
        return SolveOutcome.unbounded(dict(stats, arcs_relaxed=arcs))
    order = sorted(range(len(store)), key=lambda i: (sum(store.points[i]), store.points[i]))
    val = [None] * len(store)
    val[0] = 0
    parent = [-1] * len(store)
    arc = [-1] * len(store)
    relaxed = 0
    for u in order:
        if val[u] is None:
            continue
        p = store.points[u]
        for j in live:
            q = tuple(pk + ck for pk, ck in zip(p, cols[j]))
            v = store.index.get(q)
            if v is None:
                continue
            relaxed += 1
            cand = val[u] + inst.c[j]
            if val[v] is None or cand > val[v]:
                val[v], parent[v], arc[v] = cand, u, j
    store.parent, store.arc = parent, arc
    x = store.walk_counts(target, inst.n)
    return SolveOutcome.optimal(inst, x, dict(stats, arcs_relaxed=relaxed + arcs))
