# # Integer programs in standard form
#
# max c.x subject to A x = b and x >= 0 integral. The solver walks over
# partial sums A x' of a solution. Those stay in a narrow tube around the
# segment from 0 to b, so the graph it searches has size roughly
# (4 m Delta + 1)^m * |b|_1.

from steinitz_ip.core import validate
from steinitz_ip.dp import feasible, node_count_bound, solve_standard_form
from steinitz_ip.oracle import reference_solve

inst = validate([[2, -1, 1, 0], [1, 1, -2, 1]], [3, 1], [1, -1, -1, 2])
print("feasible point:", feasible(inst))

out = solve_standard_form(inst)
print(out.status, out.x, out.value)
print("nodes explored:", out.stats["nodes_explored"],
      "bound:", node_count_bound(inst.m, inst.delta, inst.b))

# The brute-force oracle agrees.

ref = reference_solve(inst)
print("oracle:", ref.status, ref.value)

# A positive cycle in the graph means an improving ray, so the program is
# unbounded. Here x1 = x2 + 1 and both have positive cost.

ray = validate([[1, -1]], [1], [1, 1])
print(solve_standard_form(ray).status)

# When A >= 0 no walk ever comes back, so a longest path in topological order
# is enough.

from steinitz_ip.dp import solve_acyclic

packing = validate([[1, 2, 3], [2, 1, 0]], [8, 4], [2, 3, 4])
res = solve_acyclic(packing)
print("acyclic:", res.status, res.x, res.value, "nodes:", res.stats["nodes_explored"])
