"""The chain metric: shortest paths through comparable steps.

Incomparable points are only linked through chains of comparable ones, so
their chain distance can be far larger than their plain distance.
"""
import numpy as np

from ordfix import brute_force_chain_metric, chain_components, chain_metric, comparability_graph, line_space

vee = line_space([0, 5, 1], [(0, 1), (2, 1)], names=("a", "b", "c"))
print("comparability edges:", comparability_graph(vee).edges)
e = chain_metric(vee)
print("d:\n", vee.dist)
print("e:\n", e.matrix)
print("d(a,c) = 1 but e(a,c) =", e.matrix[0, 2], "via a-b-c")

# The brute-force oracle enumerates every simple chain and agrees exactly.
print("oracle agrees:", np.array_equal(e.matrix, brute_force_chain_metric(vee).matrix))

# Without any connecting chain the distance is infinite.
split = line_space([0, 1, 5, 6], [(0, 1), (2, 3)])
print("components:", chain_components(split).components)
print("e between components:", chain_metric(split).matrix[0, 2])
