"""Acceptance gate: ten quantitative checks, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` (the lines are printed
even without ``-s``).
"""

import itertools
import random
import statistics
import time
from fractions import Fraction

import pytest

from steinitz_ip.core import l1_norm, validate
from steinitz_ip.dp import node_count_bound, solve_acyclic, solve_standard_form
from steinitz_ip.knapsack import KnapsackInstance, best_ratio_item, solve_unbounded_knapsack
from steinitz_ip.lp import LPProblem, check_vertex, relaxation, solve_lp
from steinitz_ip.oracle import (brute_force_solve, enumerate_optima, lp_ray_exists,
                                reference_solve)
from steinitz_ip.proximity import binary_expand, l1_bound, solve_bounded
from steinitz_ip.steinitz import max_prefix_norm, steinitz_reorder


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print("\n[criterion %2d] %s  %s" % (number, "PASS" if ok else "FAIL", detail))
    return emit


# -- instance families ------------------------------------------------------

def zero_sum_family(rng):
    m = rng.choice((1, 2, 3))
    n = rng.randint(1, 24)
    vs = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)]
    for k in range(m):
        s = sum(v[k] for v in vs)
        i = 0
        while s:
            v = vs[i % n]
            if s > 0 and v[k] > -5:
                v[k] -= 1
                s -= 1
            elif s < 0 and v[k] < 5:
                v[k] += 1
                s += 1
            i += 1
    return [tuple(v) for v in vs]


def dp_family(rng):
    m, n = rng.randint(1, 2), rng.randint(1, 4)
    a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
    if rng.random() < 0.5:
        b = [rng.randint(-4, 4) for _ in range(m)]
    else:
        # a hidden point keeps roughly half the family feasible
        while True:
            x0 = [rng.randint(0, 3) for _ in range(n)]
            b = [sum(r * x for r, x in zip(row, x0)) for row in a]
            if max(map(abs, b)) <= 4:
                break
    c = [rng.randint(-3, 3) for _ in range(n)]
    return validate(a, b, c)


def bounded_family(rng, mixed_sign):
    m = rng.randint(1, 2)
    n = rng.randint(1, 4)
    delta = rng.randint(1, 2)
    a = [[rng.randint(-delta, delta) for _ in range(n)] for _ in range(m)]
    a[rng.randrange(m)][rng.randrange(n)] = rng.choice((-delta, delta))
    u = [rng.randint(0, 3) for _ in range(n)]
    x0 = [rng.randint(0, ui) for ui in u]
    b = [sum(r * x for r, x in zip(row, x0)) for row in a]
    lo = -5 if mixed_sign else 0
    c = [rng.randint(lo, 5) for _ in range(n)]
    return validate(a, b, c, u)


def _dp_instances():
    rng = random.Random(20240501)
    return [dp_family(rng) for _ in range(1000)]


def _bounded_instances():
    rng = random.Random(20240504)
    return [bounded_family(rng, False) for _ in range(300)]


_cache = {}


def cached(key, build):
    if key not in _cache:
        _cache[key] = build()
    return _cache[key]


def dp_runs():
    def build():
        runs = []
        t0 = time.perf_counter()
        for inst in _dp_instances():
            runs.append((inst, solve_standard_form(inst), reference_solve(inst)))
        return runs, time.perf_counter() - t0
    return cached("dp", build)


# -- criteria ---------------------------------------------------------------

def test_criterion_01_steinitz_guarantee(report):
    rng = random.Random(20240500)
    t0 = time.perf_counter()
    ok = 0
    worst = Fraction(0)
    for _ in range(500):
        vs = zero_sum_family(rng)
        m = len(vs[0])
        bound = max(max(abs(x) for x in v) for v in vs)
        order = steinitz_reorder(vs)
        got = max_prefix_norm(vs, order)
        if sorted(order) == list(range(len(vs))) and got <= m * bound:
            ok += 1
        if bound:
            worst = max(worst, Fraction(got) / (m * bound))
    elapsed = time.perf_counter() - t0
    passed = ok == 500 and elapsed < 60
    report(1, passed, "%d/500 families within m*norm, worst ratio %s, %.1fs (< 60s)"
           % (ok, worst, elapsed))
    assert passed


def test_criterion_02_dp_matches_oracle(report):
    runs, elapsed = dp_runs()
    bad = []
    counts = {}
    for inst, got, want in runs:
        counts[want.status] = counts.get(want.status, 0) + 1
        if want.status == "unbounded":
            assert lp_ray_exists(inst)
        if (got.status, got.value) != (want.status, want.value):
            bad.append(inst)
    passed = not bad and elapsed < 300
    report(2, passed, "%d/1000 match (statuses %s), %.1fs (< 300s)"
           % (1000 - len(bad), dict(sorted(counts.items())), elapsed))
    assert passed, bad[:3]


def test_criterion_03_node_count_bound(report):
    runs, _ = dp_runs()
    violations = 0
    worst = 0.0
    for inst, got, _ in runs:
        bound = node_count_bound(inst.m, inst.delta, inst.b)
        nodes = got.stats["nodes_explored"]
        violations += nodes > bound
        worst = max(worst, nodes / bound)
    report(3, violations == 0, "%d violations over 1000 instances, worst nodes/bound %.3f"
           % (violations, worst))
    assert violations == 0


def test_criterion_04_proximity_bound(report):
    ok = 0
    worst = Fraction(0)
    for inst in _bounded_instances():
        x_star = solve_lp(relaxation(inst)).point
        optima = enumerate_optima(inst)
        assert optima, "family is feasible by construction"
        dist = min(sum(abs(zi - xi) for zi, xi in zip(z, x_star)) for z in optima)
        bound = l1_bound(inst.m, inst.delta)
        ok += dist <= bound
        worst = max(worst, dist / bound)
    report(4, ok == 300, "%d/300 within m(2m*Delta+1)^m, max dist/bound %.4f"
           % (ok, float(worst)))
    assert ok == 300


def test_criterion_05_knapsack_gap(report):
    rng = random.Random(20240505)
    ok = total = 0
    worst = Fraction(0)
    while total < 300:
        n = rng.randint(1, 4)
        k = KnapsackInstance(tuple(rng.randint(1, 6) for _ in range(n)),
                             tuple(rng.randint(1, 9) for _ in range(n)), rng.randint(1, 40))
        z = brute_force_solve(k.to_instance(), tuple(k.beta // a for a in k.weights))
        if z.status != "optimal":
            continue
        total += 1
        r = best_ratio_item(k)
        gap = Fraction(k.beta * k.profits[r], k.weights[r]) - z.value
        bound = 2 * max(k.profits) * k.delta_a
        ok += gap <= bound
        worst = max(worst, gap / bound)
    report(5, ok == 300, "%d/300 with LP gap <= 2|c|*Delta_a, max gap/bound %.4f"
           % (ok, float(worst)))
    assert ok == 300


def test_criterion_06_proximity_solver(report):
    rng = random.Random(20240506)
    family = _bounded_instances() + [bounded_family(rng, True) for _ in range(200)]
    match = shape_ok = 0
    for inst in family:
        got, want = solve_bounded(inst), brute_force_solve(inst)
        match += (got.status, got.value) == (want.status, want.value)
        L1 = l1_bound(inst.m, inst.delta)
        max_layers = inst.n * ((2 * L1 + 2).bit_length() - 1 + 2)
        st = got.stats
        shape_ok += st["layers"] <= max_layers and st["arcs_relaxed"] <= 2 * st["nodes_explored"]
    passed = match == shape_ok == 500
    report(6, passed, "%d/500 match oracle, %d/500 within layer and out-degree limits"
           % (match, shape_ok))
    assert passed


def test_criterion_07_binary_expansion(report):
    checked = bad = 0
    for total in range(129):
        for l in range(total + 1):
            u = total - l
            e = binary_expand(l, u)
            sums = {e.shift + sum(d for d, bit in zip(e.coefficients, bits) if bit)
                    for bits in itertools.product((0, 1), repeat=len(e.coefficients))}
            checked += 1
            bad += sums != set(range(-l, u + 1))
    report(7, bad == 0, "%d (l, u) pairs with l+u <= 128, %d mismatches" % (checked, bad))
    assert bad == 0


def _timed_knapsack(n, rng):
    weights = tuple([10] + [rng.randint(1, 10) for _ in range(n - 1)])
    profits = tuple(rng.randint(1, 100) for _ in range(n))
    k = KnapsackInstance(weights, profits, 10 ** 6)
    times = []
    for _ in range(5):
        t0 = time.perf_counter()
        solve_unbounded_knapsack(k)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_criterion_08_knapsack_correctness_and_scaling(report):
    rng = random.Random(20240508)
    total = match = 0
    states_ok = True
    for n in (1, 2, 3):
        for weights in itertools.product(range(1, 7), repeat=n):
            for beta in range(1, 41):
                k = KnapsackInstance(weights, tuple(rng.randint(-3, 9) for _ in range(n)), beta)
                stats = {}
                got = solve_unbounded_knapsack(k, stats)
                want = brute_force_solve(k.to_instance(), tuple(beta // a for a in weights))
                total += 1
                match += (got.status, got.value) == (want.status, want.value)
                da = k.delta_a
                states_ok &= stats["nodes_explored"] <= 4 * (2 * da + 1) * da
    t1000 = _timed_knapsack(1000, rng)
    t2000 = _timed_knapsack(2000, rng)
    ratio = t2000 / t1000
    passed = match == total and states_ok and ratio <= 2.5
    report(8, passed, "%d/%d exhaustive grid match, state bound %s, median n=2000/n=1000 "
           "= %.2f (%.1fms / %.1fms, <= 2.5)"
           % (match, total, "ok" if states_ok else "VIOLATED", ratio, t2000 * 1e3, t1000 * 1e3))
    assert passed


def test_criterion_09_nonnegative_small_rhs(report):
    rng = random.Random(20240509)
    violations = 0
    worst = 0.0
    for _ in range(100):
        m, n = rng.randint(1, 3), rng.randint(1, 5)
        delta = rng.randint(1, 3)
        a = [[rng.randint(0, delta) for _ in range(n)] for _ in range(m)]
        a[rng.randrange(m)][rng.randrange(n)] = delta
        b = [rng.randint(0, delta) for _ in range(m)]
        c = [rng.randint(-3, 3) for _ in range(n)]
        inst = validate(a, b, c)
        bound = (4 * m * delta + 1) ** m
        for out in (solve_acyclic(inst), solve_standard_form(inst)):
            nodes = out.stats["nodes_explored"]
            violations += nodes > bound
            worst = max(worst, nodes / bound)
    report(9, violations == 0, "%d violations over 100 instances (both DPs), worst nodes/bound %.3f"
           % (violations, worst))
    assert violations == 0


def test_criterion_10_lp_exactness(report):
    rng = random.Random(20240510)
    ok = 0
    for _ in range(1000):
        k = rng.randint(1, 3)
        n = rng.randint(k, 5)
        a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        up = [rng.randint(0, 3) for _ in range(n)]
        if rng.random() < 0.8:
            x0 = [rng.randint(0, u) for u in up]
            rhs = [sum(r * x for r, x in zip(row, x0)) for row in a]
        else:
            rhs = [rng.randint(-5, 5) for _ in range(k)]
        c = [rng.randint(-4, 4) for _ in range(n)]
        p = LPProblem.build(a, rhs, c, upper=up)
        out = solve_lp(p)
        lattice = [x for x in itertools.product(*[range(u + 1) for u in up])
                   if all(sum(r * xi for r, xi in zip(row, x)) == bi for row, bi in zip(a, rhs))]
        if out.status == "infeasible":
            ok += not lattice
            continue
        try:
            check_vertex(p, out.vertex)
        except AssertionError:
            continue
        value = out.vertex.objective_value
        ok += (value == sum(ci * xi for ci, xi in zip(c, out.point))
               and all(sum(ci * xi for ci, xi in zip(c, x)) <= value for x in lattice))
    report(10, ok == 1000, "%d/1000 exact basic vertices dominating all lattice points" % ok)
    assert ok == 1000
