"""Stability of marked points on a plane conic, decided by closed-form inequalities.

Four marks sit on the line pair xy = 0, two per line. Shifting weight onto
one line walks the verdict from stable to strictly semistable to unstable.
The numerical-criterion oracle is run on each one as an independent check.
"""

from fractions import Fraction as F

from conicgit import Linearization, PointedConic, ProjPoint, oracle_classify, theorem1_report
from conicgit.sampling import LINE_PAIR

points = [ProjPoint(1, 0, 0), ProjPoint(1, 0, 1), ProjPoint(0, 1, 0), ProjPoint(0, 1, 1)]
config = PointedConic(LINE_PAIR, points)
print("conic type:", type(config.conic_class).__name__)

for heavy in (F(7, 10), F(9, 10), F(19, 20)):
    light = (F(14, 5) - 2 * heavy) / 2
    lin = Linearization(F(1, 5), [light, light, heavy, heavy])
    report = theorem1_report(config, lin)
    print(f"\nc = {[str(x) for x in lin.c]}, gamma = {lin.gamma}")
    for q in report.inequalities:
        mark = "=" if q.tight else ("<" if q.holds else ">")
        print(f"   {q.name:<26} {str(q.lhs):>6} {mark} {q.rhs}")
    print("   verdict:", report.verdict.value, "| oracle:", oracle_classify(config, lin).value)
