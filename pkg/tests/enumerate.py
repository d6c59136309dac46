"""Exhaustive enumeration of collision patterns on split conics (shared by tests)."""

from fractions import Fraction
from itertools import product

from conicgit.geometry import ConicForm, PointedConic, ProjPoint, veronese
from conicgit.sampling import LINE_PAIR, NODE, VERONESE


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def _place(blocks, locations, n):
    pts = [None] * n
    for block, loc in zip(blocks, locations):
        for i in block:
            pts[i - 1] = loc
    return pts


def collision_patterns(n):
    """Every set partition of the marks placed on a smooth conic, on the line
    pair ``xy`` (each block on a line or at the node) and on the double line
    ``x^2``."""
    double = ConicForm(1, 0, 0, 0, 0, 0)
    for blocks in set_partitions(range(1, n + 1)):
        k = len(blocks)
        yield PointedConic(VERONESE, _place(blocks, [veronese(t) for t in range(k)], n))
        yield PointedConic(double, _place(blocks, [ProjPoint(0, 1, t) for t in range(k)], n))
        for sides in product((0, 1, 2), repeat=k):
            if sides.count(2) > 1:
                continue
            locs, used = [], [0, 0]
            for s in sides:
                if s == 2:
                    locs.append(NODE)
                else:
                    used[s] += 1
                    locs.append(ProjPoint(0, 1, used[s]) if s == 0 else ProjPoint(1, 0, used[s]))
            yield PointedConic(LINE_PAIR, _place(blocks, locs, n))
