"""Seeded random generators for configurations, linearizations and trees.

Everything draws from a caller-supplied :class:`random.Random`, so sweeps are
reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .geometry import ConicForm, P1Point, PointedConic, ProjPoint, det3, veronese
from .weights import Linearization

VERONESE = ConicForm(0, 0, -1, 1, 0, 0)   # y^2 - xz
LINE_PAIR = ConicForm(0, 1, 0, 0, 0, 0)   # xy
NODE = ProjPoint(0, 0, 1)


def random_rational(rng: random.Random, height: int = 9) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_gl3(rng: random.Random, height: int = 3) -> tuple:
    while True:
        g = tuple(tuple(rng.randint(-height, height) for _ in range(3)) for _ in range(3))
        if det3(g):
            return g


def distinct_params(rng: random.Random, k: int, height: int = 9) -> list[P1Point]:
    """``k`` distinct points of P^1 (infinity allowed)."""
    out: list[P1Point] = []
    while len(out) < k:
        p = P1Point(None) if rng.random() < 0.1 else P1Point(random_rational(rng, height))
        if p not in out:
            out.append(p)
    return out


def random_assignment(rng: random.Random, n: int, k: int, collide: float = 0.35) -> list[int]:
    """Assign ``n`` marks to ``k`` slots; with probability ``collide`` a mark
    joins an already used slot."""
    used: list[int] = []
    out = []
    for _ in range(n):
        if used and rng.random() < collide:
            out.append(rng.choice(used))
        else:
            s = rng.randrange(k)
            out.append(s)
            if s not in used:
                used.append(s)
    return out


def random_nonsingular(rng: random.Random, n: int, collide: float = 0.35) -> PointedConic:
    params = distinct_params(rng, n)
    slots = random_assignment(rng, n, n, collide)
    return PointedConic(VERONESE, [veronese(params[s]) for s in slots])


def nodal_location(side: int, param: Fraction) -> ProjPoint:
    """A point of ``xy = 0``: side 0 is ``x = 0``, side 1 is ``y = 0``, side 2 the node."""
    if side == 2:
        return NODE
    return ProjPoint(0, 1, param) if side == 0 else ProjPoint(1, 0, param)


def random_nodal(rng: random.Random, n: int, collide: float = 0.35,
                 node_prob: float = 0.15) -> PointedConic:
    slots: list[tuple[int, Fraction]] = []
    pts = []
    for _ in range(n):
        if slots and rng.random() < collide:
            side, t = rng.choice(slots)
        elif rng.random() < node_prob:
            side, t = 2, Fraction(0)
        else:
            side = rng.randrange(2)
            t = random_rational(rng)
            slots.append((side, t))
        pts.append(nodal_location(side, t))
    return PointedConic(LINE_PAIR, pts)


def random_double_line(rng: random.Random, n: int) -> PointedConic:
    while True:
        v = [rng.randint(-4, 4) for _ in range(3)]
        if any(v):
            break
    a, b, c = v
    form = ConicForm(a * a, 2 * a * b, 2 * a * c, b * b, 2 * b * c, c * c)
    line = ProjPoint(v)
    pts = []
    from .geometry import points_on_line
    u, w = points_on_line(line)
    for _ in range(n):
        s, t = rng.randint(-5, 5), rng.randint(-5, 5)
        if s == t == 0:
            s = 1
        pts.append(ProjPoint(tuple(s * x + t * y for x, y in zip(u.coords, w.coords))))
    return PointedConic(form, pts)


def subset_sums(c: Sequence[Fraction]):
    """Yield ``(indices, c_I)`` over nonempty proper subsets, 1-based."""
    n = len(c)
    for r in range(1, n):
        for ix in combinations(range(1, n + 1), r):
            yield ix, sum((c[i - 1] for i in ix), Fraction(0))


def on_wall(c: Sequence[Fraction], levels=(1, 2)) -> bool:
    return any(s in levels for _, s in subset_sums(c))


def random_weights(rng: random.Random, n: int, total: Fraction, cap: Fraction | None = None,
                   grain: int = 24) -> list[Fraction]:
    """Positive rationals summing to ``total``, each below ``cap`` when given."""
    while True:
        raw = [rng.randint(1, grain) for _ in range(n)]
        s = sum(raw)
        c = [total * r / s for r in raw]
        if cap is None or max(c) < cap:
            return c


def random_chamber_linearization(rng: random.Random, n: int, effective: bool = True,
                                 gamma: Fraction | None = None) -> Linearization:
    """Normalized ``c + gamma = 3`` with ``0 < gamma < 1`` and no wall hit."""
    while True:
        g = gamma if gamma is not None else Fraction(rng.randint(1, 23), 24)
        c = random_weights(rng, n, 3 - g, Fraction(1) if effective else None)
        if not on_wall(c):
            return Linearization(g, c)


def random_linearization_any(rng: random.Random, n: int) -> Linearization:
    g = Fraction(rng.randint(1, 40), rng.randint(1, 12))
    return Linearization(g, [Fraction(rng.randint(1, 30), rng.randint(1, 12)) for _ in range(n)])


def random_scale(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def random_dm_tree(rng: random.Random, n: int, splits: int | None = None):
    """A Deligne-Mumford stable tree with singleton clusters.

    Starts from one component and repeatedly splits a component with at least
    four special points, moving two or more of them (but leaving two behind)
    onto a new component joined to it.
    """
    from .moduli import MarkedTree

    if n < 3:
        raise ValueError("need n >= 3")
    items: list[list[tuple[str, int]]] = [[("m", i) for i in range(1, n + 1)]]
    edges: list[list[int]] = []
    splits = rng.randint(0, n - 3) if splits is None else splits
    for _ in range(splits):
        big = [k for k, its in enumerate(items) if len(its) >= 4]
        if not big:
            break
        k = rng.choice(big)
        its = items[k]
        size = rng.randint(2, len(its) - 2)
        moved = rng.sample(its, size)
        new = len(items)
        edges.append([k, new])
        for kind, x in moved:
            if kind == "e":
                a, b = edges[x]
                edges[x] = [new if a == k else a, new if b == k else b]
        items[k] = [it for it in its if it not in moved] + [("e", len(edges) - 1)]
        items.append(moved + [("e", len(edges) - 1)])
    comps = tuple(tuple(frozenset({x}) for kind, x in its if kind == "m") for its in items)
    return MarkedTree(comps, tuple(tuple(e) for e in edges))
