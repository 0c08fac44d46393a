# # Reordering vectors that sum to zero
#
# Take some integer vectors whose sum is zero. Walking through them in the
# given order can drift far from the origin. A good order keeps every prefix
# sum within m times the largest max-norm, where m is the dimension.

from steinitz_ip.steinitz import max_prefix_norm, prefix_sums, steinitz_reorder

# Positive vectors first and negative vectors last is the worst order.

vs = [(3, 1), (2, 2), (3, 0), (1, 3), (-3, -1), (-2, -2), (-3, 0), (-1, -3)]
print("given order, max prefix norm:", max_prefix_norm(vs, range(len(vs))))

# The reordering solves a small LP for each length k and drops one vector
# whose multiplier is zero at a vertex.

trace = []
order = steinitz_reorder(vs, trace=trace)
print("new order:", order)
for s in prefix_sums(vs, order):
    print("  ", tuple(int(v) for v in s))
print("max prefix norm:", max_prefix_norm(vs, order), "<= bound", 2 * 3)

# The trace records which vector left at each length, and the multipliers of
# the LP vertex that justified it.

for k, removed, lam in trace:
    print("k=%d drop %d  lam=%s" % (k, removed, [str(x) for x in lam]))
