"""A linearization whose semistable locus has a purely combinatorial description.

With marks 1 and 2 heavy and the rest light, a configuration is semistable
exactly when it is I-stable for I = {1, 2}. The check below runs over every
collision pattern of four marks.
"""

import sys
from collections import Counter
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from enumerate import collision_patterns  # noqa: E402

from conicgit.stability import boggi2_linearization, classify_theorem1, is_I_stable

lin = boggi2_linearization(4, F(1, 10))
print("gamma =", lin.gamma, " c =", [str(x) for x in lin.c])

table = Counter()
for config in collision_patterns(4):
    semistable = classify_theorem1(config, lin).semistable
    table[(type(config.conic_class).__name__, semistable, is_I_stable(config, {1, 2}))] += 1
for (kind, ss, istab), count in sorted(table.items()):
    print(f"   {kind:<12} semistable={ss!s:<5} I-stable={istab!s:<5} x{count}")
print("exceptions:", sum(v for (k, ss, i), v in table.items() if ss != i))
