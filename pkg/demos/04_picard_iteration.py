"""Picard iteration on a finite set: every orbit ends at a fixed point or a cycle."""
from ordfix import SelfMap, line_space
from ordfix.picard import classify_ordered, classify_plain, picard_orbit

sp = line_space([0, 1, 3], [(0, 1), (1, 2)], names=("x0", "x1", "x3"))
T = SelfMap([0, 0, 1])
r = picard_orbit(sp, T, 2)
print("orbit from x3:", [sp.name(p) for p in r.orbit], "limit", sp.name(r.limit), "after", r.steps_to_limit)
print("plain Picard operator:", classify_plain(sp, T).picard_plain)

swap = picard_orbit(line_space([0, 1], []), SelfMap([1, 0]), 0)
print("swap map:", swap.limit)

# Modulo the order only starts below their image matter, and comparable fixed points clash.
rev = line_space([0, 1, 3], [(2, 1), (1, 0)])
c = classify_ordered(rev, T)
print("reversed order: X(T,<=) =", c.lower_image_set, "ordered Picard:", c.picard_ordered)
c = classify_ordered(line_space([0, 1], [(0, 1)]), SelfMap.identity(2))
print("identity on a chain:", c.picard_ordered, c.witnesses)
