"""Which boundary curves collapse on the way to the conic quotient.

An F-curve is a one-parameter family of stable curves indexed by a partition
of the marks into four parts. It is contracted when every member has the
same image. Here the prediction is compared with two members taken from
each family.

These weights sit on walls (c_1 + c_5 + c_6 = 1, for one), so collapsing a
family can produce a cluster of weight exactly 1. The pipeline refuses such
clusters by default; ``allow_boundary`` lets them through, and each one is
listed in the result's flags.
"""

from fractions import Fraction as F

from conicgit.moduli import FCurvePartition, canonical_form, fcurve_contracted, fcurve_member, semistable_reduction_pipeline

c, gamma = [F(5, 8)] * 4 + [F(2, 8), F(1, 8)], F(1, 8)

for parts in ([[6], [5], [1], [2, 3, 4]], [[1], [2], [3], [4, 5, 6]], [[5], [6], [1, 2], [3, 4]]):
    P = FCurvePartition(parts)
    runs = [semistable_reduction_pipeline(fcurve_member(P, lam), c, gamma, allow_boundary=True)
            for lam in (F(-1), F(3, 7))]
    same = canonical_form(runs[0].image) == canonical_form(runs[1].image)
    print(f"{parts}: legs {[str(x) for x in P.leg_weights(c)]}")
    print(f"   predicted contracted: {fcurve_contracted(P, c, gamma)}, members agree: {same}")
    for flag in sorted(set(runs[0].flags)):
        print("   flag:", flag)
