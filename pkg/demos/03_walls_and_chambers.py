"""The space of linearizations: normalization, walls, chambers and crossings."""

from fractions import Fraction as F

from conicgit import Linearization
from conicgit.polytope import (
    chamber_signature,
    delta3_vertex_count,
    normalize,
    segment_crossings,
    walls_at,
)

six = Linearization(F(1, 8), [F(5, 8)] * 4 + [F(2, 8), F(1, 8)])
nl = normalize(six)
print("normalized:", nl.regime.value, "gamma =", nl.gamma, "sum c =", sum(nl.c))
for hit in walls_at(nl):
    print(f"   on wall c_{set(hit.subset)} = {hit.level}")

# both scaled copies land on the same normal form
print("scale invariant:", normalize(six.scaled(7)) == nl)

start = normalize(Linearization(F(1, 4), [F(5, 8), F(13, 24), F(19, 24), F(19, 24)]))
end = normalize(Linearization(F(1, 4), [F(3, 8), F(13, 24), F(7, 8), F(23, 24)]))
print("\nstart on a wall?", chamber_signature(start).on_wall)
for t, hit in segment_crossings(start, end):
    print(f"   t = {t}: crosses c_{set(hit.subset)} = {hit.level}")

print("\nvertex counts:", {n: delta3_vertex_count(n) for n in range(3, 8)})
