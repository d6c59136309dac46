"""The Hilbert-Mumford function for one family of one-parameter subgroups.

The subgroups diag(t^b, t^(-1-b), t) act on the six conic monomials with
weights that are linear in b, and their order flips at b = -1. For a fixed
configuration the minimum weight mu(b) is concave and piecewise linear, so
its maximum is found exactly from the breakpoints.
"""

from fractions import Fraction as F

from conicgit import Linearization, PointedConic, ProjPoint
from conicgit.geometry import ConicForm
from conicgit.hilbert_mumford import OnePSFrame, monomial_weights, mu_of_frame, oracle_search

labels = ("x^2", "xy", "xz", "y^2", "yz", "z^2")
for b in (F(-2), F(-3, 2), F(-1), F(-3, 4), F(-1, 2)):
    row = ", ".join(f"{m}:{w}" for m, w in zip(labels, monomial_weights(b)))
    print(f"b = {str(b):>5}  {row}")

# a double line x^2 = 0 with two marks: the identity frame already destabilizes it
double = PointedConic(ConicForm(1, 0, 0, 0, 0, 0), [ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)])
lin = Linearization(1, [1, 1])
prof = mu_of_frame(double, lin, OnePSFrame.identity())
print("\nbreakpoints:", [str(b) for b in prof.breakpoints])
print("mu at breakpoints:", [str(v) for v in prof.values])
print("max mu =", prof.maximum, "at b =", prof.argmax_b)

res = oracle_search(double, lin)
print("oracle verdict:", res.verdict.value, "after", res.frames_checked, "frames")
