"""Closed-form GIT stability of pointed conics, points on P^1, and Boggi I-stability."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import (
    DoubleLine,
    Nodal,
    NonSingular,
    P1Point,
    PointedConic,
    ProjPoint,
    as_fraction,
    classify_conic,
    same_component,
)
from .weights import Linearization, Verdict


@dataclass(frozen=True)
class WeightAtLocation:
    location: ProjPoint
    indices: tuple[int, ...]
    total: Fraction


@dataclass(frozen=True)
class Inequality:
    """``lhs <= rhs`` (semistability); stability wants it strict."""

    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class StabilityReport:
    verdict: Verdict
    conic_type: str
    inequalities: tuple[Inequality, ...] = field(default_factory=tuple)
    note: str = ""


def verdict_from_inequalities(ineqs: Iterable[Inequality]) -> Verdict:
    ineqs = list(ineqs)
    if not all(q.holds for q in ineqs):
        return Verdict.UNSTABLE
    if any(q.tight for q in ineqs):
        return Verdict.STRICTLY_SEMISTABLE
    return Verdict.STABLE


def weights_at_locations(config: PointedConic, lin: Linearization) -> list[WeightAtLocation]:
    return [
        WeightAtLocation(p, ix, lin.subset_weight(ix))
        for p, ix in config.locations().items()
    ]


def _label(indices: Sequence[int]) -> str:
    return "{" + ",".join(map(str, indices)) + "}"


def nodal_inequalities(smooth: Sequence[tuple[str, Fraction]], node_weight: Fraction,
                       components: Sequence[tuple[str, Fraction]],
                       c: Fraction, gamma: Fraction) -> list[Inequality]:
    """The three nodal conditions.

    ``components`` carries, for each of the two lines, its weight away from the
    node; the weight on a line (node included) must be at most ``(2c - gamma)/3``.
    """
    smooth_cap = (c + gamma) / 3
    out = [Inequality(f"smooth point {name}", w, smooth_cap) for name, w in smooth]
    out.append(Inequality("node", node_weight, c - 2 * smooth_cap))
    comp_cap = (2 * c - gamma) / 3
    for name, away in components:
        out.append(Inequality(f"component {name}", away + node_weight, comp_cap))
    return out


def nonsingular_inequalities(points: Sequence[tuple[str, Fraction]], c: Fraction,
                             gamma: Fraction) -> list[Inequality]:
    cap = min((c + gamma) / 3, c / 2)
    return [Inequality(f"point {name}", w, cap) for name, w in points]


def nodal_components(config: PointedConic, node: ProjPoint) -> list[list[WeightAtLocation]]:
    """Group the marked locations off the node into (at most two) line components."""
    groups: list[list[ProjPoint]] = []
    for p in config.locations():
        if p == node:
            continue
        for g in groups:
            if same_component(node, g[0], p):
                g.append(p)
                break
        else:
            groups.append([p])
    if len(groups) > 2:
        raise ValueError("points of a line pair fall on more than two lines through the node")
    locs = config.locations()
    return [[WeightAtLocation(p, locs[p], Fraction(0)) for p in g] for g in groups]


def theorem1_report(config: PointedConic, lin: Linearization) -> StabilityReport:
    """Evaluate the closed-form inequalities and return them with the verdict."""
    lin.require_positive()
    if lin.n != config.n:
        raise ValueError(f"linearization has {lin.n} point weights, config has {config.n} points")
    c, gamma = lin.total, lin.gamma
    cls = classify_conic(config.form)
    if isinstance(cls, DoubleLine):
        return StabilityReport(Verdict.UNSTABLE, "double line", (), "non-reduced conics are unstable")
    locs = weights_at_locations(config, lin)
    if isinstance(cls, NonSingular):
        ineqs = nonsingular_inequalities([(_label(w.indices), w.total) for w in locs], c, gamma)
        return StabilityReport(verdict_from_inequalities(ineqs), "nonsingular", tuple(ineqs))

    node = cls.node
    node_w = next((w.total for w in locs if w.location == node), Fraction(0))
    smooth = [(_label(w.indices), w.total) for w in locs if w.location != node]
    groups = nodal_components(config, node)
    comps = []
    for g in groups:
        ix = sorted(i for w in g for i in w.indices)
        comps.append((f"through {_label(ix)}", lin.subset_weight(ix)))
    while len(comps) < 2:
        comps.append(("without marks", Fraction(0)))
    ineqs = nodal_inequalities(smooth, node_w, comps, c, gamma)
    note = "gamma > c/2: singular conics are unstable" if gamma > c / 2 else ""
    verdict = Verdict.UNSTABLE if gamma > c / 2 else verdict_from_inequalities(ineqs)
    return StabilityReport(verdict, "nodal", tuple(ineqs), note)


def classify_theorem1(config: PointedConic, lin: Linearization) -> Verdict:
    """GIT stability of a pointed conic from the closed-form inequalities.

    Double lines are unstable; a line pair is judged on the weight at each
    smooth point, at the node and on each line; a smooth conic on the weight
    at each point.
    """
    return theorem1_report(config, lin).verdict


# ---------------------------------------------------------------------------

def _as_p1(p) -> P1Point:
    if isinstance(p, P1Point):
        return p
    if isinstance(p, tuple) and len(p) == 2:
        return P1Point(*p)
    return P1Point(p)


def sl2_report(points: Sequence, c: Sequence) -> StabilityReport:
    cs = [as_fraction(v) for v in c]
    if len(cs) != len(points):
        raise ValueError("one weight per point is required")
    if any(v <= 0 for v in cs):
        raise ValueError("every c_i must be positive")
    total = sum(cs, Fraction(0))
    clusters: dict[P1Point, list[int]] = {}
    for idx, p in enumerate(points, start=1):
        clusters.setdefault(_as_p1(p), []).append(idx)
    ineqs = [
        Inequality(f"point {_label(ix)}", sum((cs[i - 1] for i in ix), Fraction(0)), total / 2)
        for ix in clusters.values()
    ]
    return StabilityReport(verdict_from_inequalities(ineqs), "P^1", tuple(ineqs))


def classify_sl2(points: Sequence, c: Sequence) -> Verdict:
    """Points on P^1: semistable iff no point carries more than half the weight.

    Points may be :class:`P1Point`, ``(s, t)`` pairs, rationals, or ``None``
    for infinity.
    """
    return sl2_report(points, c).verdict


# ---------------------------------------------------------------------------

def _check_index_set(I: Iterable[int], n: int) -> frozenset[int]:
    I = frozenset(I)
    if not I:
        raise ValueError("I must be nonempty")
    if not I <= set(range(1, n + 1)):
        raise ValueError(f"I = {sorted(I)} is not a subset of 1..{n}")
    return I


def is_I_stable(config, I: Iterable[int]) -> bool:
    """Boggi I-stability of a pointed conic or of a list of points on P^1.

    The I-marked points must avoid the singularities and collide with
    nothing; every component needs three special points (distinct marked
    locations plus the node) and at least one I-marked point.
    """
    if not isinstance(config, PointedConic):
        pts = [_as_p1(p) for p in config]
        I = _check_index_set(I, len(pts))
        clusters: dict[P1Point, list[int]] = {}
        for idx, p in enumerate(pts, start=1):
            clusters.setdefault(p, []).append(idx)
        return _clusters_ok(clusters.values(), I) and len(clusters) >= 3

    I = _check_index_set(I, config.n)
    cls = classify_conic(config.form)
    if isinstance(cls, DoubleLine):
        return False
    locs = config.locations()
    if not _clusters_ok(locs.values(), I):
        return False
    if isinstance(cls, NonSingular):
        return len(locs) >= 3
    node = cls.node
    if any(i in I for i in locs.get(node, ())):
        return False
    groups = nodal_components(config, node)
    if len(groups) < 2:
        return False
    for g in groups:
        marks = {i for w in g for i in w.indices}
        if len(g) + 1 < 3 or not marks & I:
            return False
    return True


def _clusters_ok(clusters: Iterable[Sequence[int]], I: frozenset[int]) -> bool:
    return all(len(ix) == 1 for ix in clusters if set(ix) & I)


def boggi2_linearization(n: int, eps) -> Linearization:
    """``(3e, 1-e, 1-e, (1-e)/(n-2), ..., (1-e)/(n-2))``, realizing the
    [2]-stable Boggi space as a conic quotient for small ``e``."""
    if n < 3:
        raise ValueError("need n >= 3")
    e = as_fraction(eps)
    if not 0 < e < 1:
        raise ValueError("eps must lie in (0, 1)")
    light = (1 - e) / (n - 2)
    return Linearization(3 * e, [1 - e, 1 - e] + [light] * (n - 2))
