# # Knapsack with an equality constraint
#
# One row, positive weights. The LP puts everything on the best
# profit/weight item, and an integer optimum uses all but about
# 2*Delta_a + 1 of those copies. The rest is a table of size O(Delta_a^2),
# whatever the capacity.

import random
import time

from steinitz_ip.knapsack import (KnapsackInstance, solve_bounded_knapsack,
                                  solve_unbounded_knapsack, with_slack)

k = KnapsackInstance((7, 9, 10), (15, 20, 21), 10 ** 12 + 3)
stats = {}
out = solve_unbounded_knapsack(k, stats)
print(out.x, out.value)
print("fixed copies:", stats["shift"], "table size:", stats["nodes_explored"])

# Run time grows with n, not with the capacity.

rng = random.Random(1)
for n in (500, 1000, 2000, 4000):
    big = KnapsackInstance(tuple(rng.randint(1, 10) for _ in range(n)),
                           tuple(rng.randint(1, 100) for _ in range(n)), 10 ** 6)
    t0 = time.perf_counter()
    solve_unbounded_knapsack(big)
    print("n=%d  %.2f ms" % (n, 1e3 * (time.perf_counter() - t0)))

# With upper bounds the box around the LP vertex becomes a 0/1 knapsack over
# binary copies of each item.

b = KnapsackInstance((4, 7, 9), (5, 9, 11), 5000, (600, 400, 300))
res = solve_bounded_knapsack(b)
print(res.x, res.value)

# For a <= capacity, add a slack item of weight one and no profit.

print(solve_unbounded_knapsack(with_slack(KnapsackInstance((3, 5), (4, 7), 9))).x)
