# # Bounded variables and proximity
#
# With upper bounds u the solver first solves the LP relaxation exactly.
# Some integer optimum lies within l1 distance m (2 m Delta + 1)^m of the
# LP vertex, so only a small box around floor(x*) is searched.

from steinitz_ip.core import validate
from steinitz_ip.lp import relaxation, solve_lp
from steinitz_ip.oracle import enumerate_optima
from steinitz_ip.proximity import (binary_expand, l1_bound, reduce, solve_bounded,
                                   working_budget)

inst = validate([[3, -2, 1], [1, 1, -1]], [41, 10], [2, 3, -1], [50, 50, 50])
lp = solve_lp(relaxation(inst))
print("LP vertex:", [str(v) for v in lp.point], "value", lp.vertex.objective_value)
print("l1 bound:", l1_bound(inst.m, inst.delta), "working budget:", working_budget(inst))

# After the shift y = z - floor(x*) each variable lives in [-l*, u*].

red = reduce(inst, lp.vertex)
print("floor:", red.floor_point, "rhs:", red.rhs)
print("l*:", red.lower_star, "u*:", red.upper_star)

# Each range is covered by a few binary steps, so every layer of the search
# graph has a skip arc and a take arc.

for lo, hi in zip(red.lower_star, red.upper_star):
    e = binary_expand(lo, hi)
    print("  [%d, %d] -> shift %d, steps %s" % (-lo, hi, e.shift, list(e.coefficients)))

out = solve_bounded(inst)
print(out.status, out.x, out.value)
print("layers:", out.stats["layers"], "widest layer:", out.stats["max_layer_width"])

# Check the distance to the LP vertex against every optimum in a small box.

small = validate([[3, -2, 1], [1, 1, -1]], [10, 4], [2, 3, -1], [8, 8, 8])
x_star = solve_lp(relaxation(small)).point
dists = [sum(abs(z - x) for z, x in zip(opt, x_star)) for opt in enumerate_optima(small)]
print("closest optimum at l1 distance", min(dists), "of", l1_bound(small.m, small.delta))
