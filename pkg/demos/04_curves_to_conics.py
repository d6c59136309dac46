"""From a stable marked tree to a pointed conic, and the verdict on the way.

A six-mark chain is reduced with respect to the weights, contracted to a
line pair with the middle component crushed into the node, and then
classified. Then a random stable tree goes through the same steps.
"""

import random
from fractions import Fraction as F

from conicgit.moduli import chain, realize_image, reduce, semistable_reduction_pipeline
from conicgit.sampling import random_chamber_linearization, random_dm_tree
from conicgit.stability import classify_theorem1
from conicgit.weights import Linearization

c = [F(5, 8)] * 4 + [F(2, 8), F(1, 8)]
T = chain([[1], [2]], [[5], [6]], [[3], [4]])
res = semistable_reduction_pipeline(T, c, F(1, 8))
print("image:", type(res.image).__name__)
print("   left line marks:", [sorted(cl) for cl in res.image.left.clusters])
print("   right line marks:", [sorted(cl) for cl in res.image.right.clusters])
print("   at the node:", sorted(res.image.node))
print("verdict:", res.verdict.value)

# the same image as explicit points in the plane, judged directly
config = realize_image(res.image)
print("realized verdict:", classify_theorem1(config, Linearization(F(1, 8), c)).value)

rng = random.Random(2)
tree = random_dm_tree(rng, 7, splits=3)
lin = random_chamber_linearization(rng, 7)
print("\nrandom tree shape:", tree.shape())
reduced = reduce(tree, lin.c)
print("reduced to a chain of", len(reduced.components), "components:", reduced.is_chain())
print("verdict:", semistable_reduction_pipeline(tree, lin.c, lin.gamma).verdict.value)
