"""Normalized linearizations, walls, chambers and hypersimplex vertices."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, floor
from typing import Sequence

from .geometry import as_fraction
from .weights import Linearization


class Regime(enum.Enum):
    LOW_GAMMA = "LowGamma"     # c + gamma = 3, gamma <= c/2
    HIGH_GAMMA = "HighGamma"   # c = 2, gamma >= c/2


@dataclass(frozen=True)
class NormalizedLinearization:
    gamma: Fraction
    c: tuple[Fraction, ...]
    regime: Regime

    def __post_init__(self):
        total = sum(self.c, Fraction(0))
        if self.regime is Regime.LOW_GAMMA and total + self.gamma != 3:
            raise ValueError("LowGamma cross-section needs c + gamma = 3")
        if self.regime is Regime.HIGH_GAMMA and total != 2:
            raise ValueError("HighGamma cross-section needs c = 2")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def total(self) -> Fraction:
        return sum(self.c, Fraction(0))

    @property
    def linearization(self) -> Linearization:
        return Linearization(self.gamma, self.c)

    @property
    def on_overlap(self) -> bool:
        return self.gamma == 1 and self.total == 2


@dataclass(frozen=True)
class WallHit:
    subset: tuple[int, ...]   # 1-based
    level: int


def normalize(lin: Linearization) -> NormalizedLinearization:
    """Rescale onto ``c + gamma = 3`` (gamma <= c/2) or ``c = 2`` (gamma > c/2).

    >>> normalize(Linearization(2, [2, 2, 2])).gamma
    Fraction(3, 4)
    """
    c = lin.total
    if c == 0:
        raise ValueError("the ray c = 0 has no normalization")
    if lin.gamma <= c / 2:
        scale, regime = Fraction(3) / (c + lin.gamma), Regime.LOW_GAMMA
    else:
        scale, regime = Fraction(2) / c, Regime.HIGH_GAMMA
    return NormalizedLinearization(lin.gamma * scale, tuple(v * scale for v in lin.c), regime)


def _as_normalized(nl) -> NormalizedLinearization:
    return nl if isinstance(nl, NormalizedLinearization) else normalize(nl)


def is_effective(nl) -> bool:
    """Whether some configuration is semistable: every ``c_i`` at most 1."""
    nl = _as_normalized(nl)
    if nl.gamma < 0 or any(v < 0 for v in nl.c):
        return False
    if nl.regime is Regime.LOW_GAMMA:
        return max(nl.c) <= (nl.total + nl.gamma) / 3
    return max(nl.c) <= nl.total / 2


def wall_levels(regime: Regime) -> tuple[int, ...]:
    return (1, 2) if regime is Regime.LOW_GAMMA else (1,)


def _subsets(n: int):
    for r in range(1, n):
        yield from combinations(range(1, n + 1), r)


def walls_at(nl) -> list[WallHit]:
    """Every nonempty proper subset whose weight sits exactly on a wall level."""
    nl = _as_normalized(nl)
    levels = wall_levels(nl.regime)
    hits = []
    for ix in _subsets(nl.n):
        s = sum((nl.c[i - 1] for i in ix), Fraction(0))
        if s in levels:
            hits.append(WallHit(ix, int(s)))
    return hits


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ChamberSignature:
    regime: Regime
    signs: tuple[tuple[int, int], ...]   # per subset in _subsets order: sign(c_I-1), sign(c_I-2)

    @property
    def on_wall(self) -> bool:
        return any(0 in pair for pair in self.signs)


def chamber_signature(nl) -> ChamberSignature:
    """Sign vector of ``c_I - 1`` and ``c_I - 2`` over all nonempty proper subsets.

    Complements are kept as well: their signs are not determined by the
    subset's own signs once gamma varies.
    """
    nl = _as_normalized(nl)
    signs = []
    for ix in _subsets(nl.n):
        s = sum((nl.c[i - 1] for i in ix), Fraction(0))
        signs.append((_sign(s - 1), _sign(s - 2) if nl.regime is Regime.LOW_GAMMA else 0))
    return ChamberSignature(nl.regime, tuple(signs))


def same_chamber(nl1, nl2) -> bool:
    """Same regime and identical sign vectors (so no wall separates them)."""
    return chamber_signature(nl1) == chamber_signature(nl2)


def segment_crossings(nl1, nl2) -> list[tuple[Fraction, WallHit]]:
    """Walls met strictly inside the segment from ``nl1`` to ``nl2``, sorted by
    the parameter ``t`` in (0, 1)."""
    a, b = _as_normalized(nl1), _as_normalized(nl2)
    if a.regime is not b.regime:
        raise ValueError("segment endpoints lie on different cross-sections")
    if a.n != b.n:
        raise ValueError("endpoints have different numbers of points")
    out = []
    for ix in _subsets(a.n):
        s0 = sum((a.c[i - 1] for i in ix), Fraction(0))
        s1 = sum((b.c[i - 1] for i in ix), Fraction(0))
        if s0 == s1:
            continue
        for level in wall_levels(a.regime):
            t = (level - s0) / (s1 - s0)
            if 0 < t < 1:
                out.append((t, WallHit(ix, level)))
    out.sort(key=lambda item: (item[0], item[1].level, item[1].subset))
    return out


# ---------------------------------------------------------------------------

def hypersimplex_vertices(k, n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of ``{x in [0,1]^n : sum x = k}``.

    For integer ``k`` these are the 0/1 vectors with ``k`` ones; otherwise
    ``floor(k)`` ones, one entry ``k - floor(k)`` and zeros elsewhere.
    """
    k = as_fraction(k)
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k = {k}, n = {n}")
    whole = floor(k)
    frac = k - whole
    verts = []
    for ones in combinations(range(n), whole):
        if frac == 0:
            verts.append(tuple(Fraction(int(i in ones)) for i in range(n)))
            continue
        for j in range(n):
            if j in ones:
                continue
            verts.append(tuple(
                Fraction(1) if i in ones else (frac if i == j else Fraction(0)) for i in range(n)
            ))
    return verts


def delta3_faces(n: int) -> tuple[list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]:
    """Vertices of the linearization polytope for ``0 <= gamma <= 1`` as
    ``(gamma, c_1..c_n)`` vectors: the gamma = 0 face (three 1s among c) and
    the gamma = 1 face (two 1s among c)."""
    if n < 3:
        raise ValueError("need n >= 3")
    low = [(Fraction(0),) + v for v in hypersimplex_vertices(3, n)]
    high = [(Fraction(1),) + v for v in hypersimplex_vertices(2, n)]
    return low, high


def delta3_vertex_count(n: int) -> int:
    low, high = delta3_faces(n)
    return len(low) + len(high)


def delta3_vertex_count_formula(n: int) -> int:
    return comb(n + 1, 3)
