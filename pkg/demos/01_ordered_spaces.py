"""Building finite ordered metric spaces and watching the validators reject bad input."""
from ordfix import (
    AntisymmetryViolation,
    TriangleViolation,
    close_order,
    comparable,
    line_space,
    metric_from_embedding,
    validate_metric,
)

# A metric can come from a matrix or from coordinates.
m = metric_from_embedding([[0.0, 0.0], [3.0, 4.0], [6.0, 0.0]], "euclidean")
print("embedded distances:\n", m.matrix)

# Matrices are checked axiom by axiom; the triangle report names the worst triple.
try:
    validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
except TriangleViolation as err:
    print("rejected:", err.to_dict())

# Orders are closed under transitivity; a partial order refuses 2-cycles.
order = close_order([(0, 1), (1, 2)], 3)
print("0 <= 2 after closing:", bool(order.leq[0, 2]))
try:
    close_order([(0, 1), (1, 0)], 2, "partial")
except AntisymmetryViolation as err:
    print("rejected:", err)
print("as a quasi-order it is fine:\n", close_order([(0, 1), (1, 0)], 2, "quasi").leq)

# Comparability is reflexive and symmetric but not transitive.
vee = line_space([0, 5, 1], [(0, 1), (2, 1)], names=("a", "b", "c"))
for x, y in [(0, 1), (1, 2), (0, 2)]:
    print(f"{vee.name(x)} <> {vee.name(y)}:", comparable(vee, x, y))
