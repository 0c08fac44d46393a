import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from steinitz_ip.core import PreconditionViolated, validate
from steinitz_ip.dp import (TubeSpec, feasible, node_count_bound, solve_acyclic,
                            solve_standard_form, tube_contains, _Membership)
from steinitz_ip.oracle import lp_ray_exists, reference_solve


def brute(a, b, c, limit):
    """Tiny independent enumerator for hand examples."""
    best = None
    n = len(c)
    for x in itertools.product(range(limit + 1), repeat=n):
        if all(sum(r * xi for r, xi in zip(row, x)) == bi for row, bi in zip(a, b)):
            v = sum(ci * xi for ci, xi in zip(c, x))
            if best is None or v > best[0]:
                best = (v, x)
    return best


class TestTube:
    def test_origin_always_inside(self):
        for b in [(5, 0), (-3, 2), (0, 0)]:
            assert tube_contains((0, 0), TubeSpec.uniform(b, 4))

    def test_interior_point(self):
        # lam = 2/5 gives |2 - 2| = 0 and |3 - 0| = 3
        assert tube_contains((2, 3), TubeSpec.uniform((5, 0), 4))

    def test_far_point(self):
        # min over lam of |10 - 5 lam| is 5 > 4
        assert not tube_contains((10, 0), TubeSpec.uniform((5, 0), 4))

    def test_tight_radius_never_exceeds_uniform(self):
        inst = validate([[1, -2, 0], [2, 1, -1]], [4, -3], [0, 0, 0])
        tight = TubeSpec.for_instance(inst)
        assert all(r <= 2 * inst.m * inst.delta for r in tight.radius)
        assert tight.radius == (Fraction(4) + Fraction(8, 3), Fraction(4) + 2)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=3), st.data())
    def test_integer_membership_agrees(self, b, data):
        m = len(b)
        x = tuple(data.draw(st.lists(st.integers(-12, 12), min_size=m, max_size=m)))
        radius = tuple(Fraction(data.draw(st.integers(0, 12)), data.draw(st.integers(1, 4)))
                       for _ in range(m))
        spec = TubeSpec(tuple(b), radius)
        assert _Membership(spec)(x) == tube_contains(x, spec)
        # brute force over lam on a fine grid that contains every breakpoint
        den = 1
        for bk in b:
            den *= max(abs(bk), 1)
        grid_hit = any(all(abs(xk - Fraction(j, den * 48) * bk) <= rk
                           for xk, bk, rk in zip(x, b, radius))
                       for j in range(den * 48 + 1))
        if grid_hit:
            assert tube_contains(x, spec)


class TestFeasible:
    def test_simple(self):
        inst = validate([[2, 3]], [5], [0, 0])
        z = feasible(inst)
        assert z == (1, 1)
        assert brute([[2, 3]], [5], [0, 0], 2) is not None

    def test_zero_rhs(self):
        inst = validate([[1, -1, 2], [0, 3, -2]], [0, 0], [1, 1, 1])
        assert feasible(inst) == (0, 0, 0)

    def test_parity(self):
        assert feasible(validate([[2]], [1], [0])) is None
        assert brute([[2]], [1], [0], 10) is None

    def test_upper_bounds_rejected(self):
        with pytest.raises(PreconditionViolated):
            feasible(validate([[1]], [1], [1], [3]))


class TestSolveStandardForm:
    def test_enumerated_optimum(self):
        inst = validate([[1, 1]], [3], [1, 2])
        out = solve_standard_form(inst)
        assert (out.x, out.value) == ((0, 3), 6)
        assert brute([[1, 1]], [3], [1, 2], 3) == (6, (0, 3))

    def test_unbounded_ray(self):
        inst = validate([[1, -1]], [1], [1, 1])
        assert solve_standard_form(inst).status == "unbounded"
        assert lp_ray_exists(inst)

    def test_zero_objective(self):
        inst = validate([[1, -1, 2], [1, 1, 0]], [2, 2], [0, 0, 0])
        out = solve_standard_form(inst)
        assert out.status == "optimal" and out.value == 0

    def test_zero_column_positive_cost(self):
        assert solve_standard_form(validate([[0, 1]], [1], [1, 0])).status == "unbounded"

    def test_zero_column_infeasible_stays_infeasible(self):
        assert solve_standard_form(validate([[0, 2]], [1], [1, 0])).status == "infeasible"

    def test_duplicate_columns_keep_best_cost(self):
        out = solve_standard_form(validate([[1, 1]], [2], [1, 3]))
        assert (out.x, out.value) == ((0, 2), 6)

    def test_big_values_exact(self):
        big = 10 ** 30
        out = solve_standard_form(validate([[1, -1]], [2], [big, -big - 1]))
        assert out.value == 2 * big

    def test_walk_reconstruction(self):
        inst = validate([[2, -1, 1], [1, 1, -2]], [3, 1], [1, -1, -1])
        out = solve_standard_form(inst)
        assert out.status == "optimal"
        assert inst.residual(out.x) == (0, 0)
        assert out.stats["nodes_explored"] <= node_count_bound(2, 2, (3, 1))


class TestAcyclic:
    def test_enumerated(self):
        inst = validate([[1, 2], [0, 1]], [3, 1], [1, 1])
        out = solve_acyclic(inst)
        assert (out.x, out.value) == ((1, 1), 2)
        assert brute([[1, 2], [0, 1]], [3, 1], [1, 1], 3) == (2, (1, 1))

    def test_zero_rhs(self):
        out = solve_acyclic(validate([[1]], [0], [7]))
        assert (out.x, out.value) == ((0,), 0)

    def test_zero_column_unbounded(self):
        assert solve_acyclic(validate([[0, 1]], [1], [1, 0])).status == "unbounded"

    def test_zero_column_dropped(self):
        out = solve_acyclic(validate([[0, 1]], [1], [-1, 4]))
        assert (out.x, out.value) == ((0, 1), 4)

    def test_negative_entry_rejected(self):
        with pytest.raises(PreconditionViolated):
            solve_acyclic(validate([[1, -1]], [1], [0, 0]))

    def test_negative_rhs(self):
        assert solve_acyclic(validate([[1, 2]], [-1], [0, 0])).status == "infeasible"

    def test_agrees_with_general(self):
        rng = random.Random(4)
        for _ in range(200):
            m, n = rng.randint(1, 3), rng.randint(1, 4)
            a = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
            b = [rng.randint(0, 6) for _ in range(m)]
            c = [rng.randint(-3, 3) for _ in range(n)]
            inst = validate(a, b, c)
            x, y = solve_acyclic(inst), solve_standard_form(inst)
            assert (x.status, x.value) == (y.status, y.value)


@pytest.mark.parametrize("m, delta, b, expected", [
    (1, 1, [5], 25),
    (1, 1, [0], 5),
    (2, 1, [1, 1], 162),
])
def test_node_count_bound(m, delta, b, expected):
    assert node_count_bound(m, delta, b) == expected


def test_uniform_tube_can_exceed_node_bound():
    # the plain 2*m*Delta tube reaches all of [-2, 3] here, 6 > 5 nodes
    inst = validate([[1, -1]], [1], [-1, -1])
    wide = solve_standard_form(inst, tube="uniform")
    tight = solve_standard_form(inst)
    assert wide.stats["nodes_explored"] == 6
    assert tight.stats["nodes_explored"] <= node_count_bound(1, 1, [1])
    assert (wide.status, wide.value) == (tight.status, tight.value) == ("optimal", -1)


def test_unbounded_matches_lp_ray():
    rng = random.Random(9)
    for _ in range(200):
        m, n = rng.randint(1, 2), rng.randint(1, 4)
        a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        x0 = [rng.randint(0, 2) for _ in range(n)]
        b = [sum(r * x for r, x in zip(row, x0)) for row in a]
        c = [rng.randint(-3, 3) for _ in range(n)]
        inst = validate(a, b, c)
        out = solve_standard_form(inst)
        assert (out.status == "unbounded") == lp_ray_exists(inst)


def test_matches_reference_small_family():
    rng = random.Random(17)
    for _ in range(150):
        m, n = rng.randint(1, 2), rng.randint(1, 3)
        a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-3, 3) for _ in range(m)]
        c = [rng.randint(-3, 3) for _ in range(n)]
        inst = validate(a, b, c)
        got, want = solve_standard_form(inst), reference_solve(inst)
        assert (got.status, got.value) == (want.status, want.value)
