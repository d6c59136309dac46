"""Combinatorics of weighted pointed rational curves and their conic images.

A :class:`MarkedTree` is a nodal tree of P^1's with marked points grouped
into clusters (marks that coincide at one smooth point).  Trees may carry
P^1 coordinates for clusters and node points; every combinatorial operation
ignores them, and :func:`reduce` and :func:`conic_image` thread them through
so that images can be compared up to projective equivalence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import ConicForm, P1Point, PointedConic, ProjPoint, mobius_normal_form, veronese
from .stability import (
    StabilityReport,
    nodal_inequalities,
    nonsingular_inequalities,
    verdict_from_inequalities,
)
from .weights import Linearization, Verdict

Cluster = frozenset


def _weights(c: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in c)


def _cluster_weight(cluster: Iterable[int], c: Sequence[Fraction]) -> Fraction:
    return sum((c[i - 1] for i in cluster), Fraction(0))


def _fmt(cluster: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(cluster))) + "}"


@dataclass(frozen=True)
class MarkedTree:
    """Components (tuples of clusters) joined by edges into a tree.

    ``positions[i][k]`` is the P^1 coordinate of cluster ``k`` on component
    ``i``; ``edge_positions[e]`` gives the node point of edge ``e`` on each of
    its two components.  Both are optional.
    """

    components: tuple[tuple[frozenset, ...], ...]
    edges: tuple[tuple[int, int], ...]
    positions: tuple[tuple[P1Point, ...], ...] | None = None
    edge_positions: tuple[tuple[P1Point, P1Point], ...] | None = None

    def __post_init__(self):
        comps = tuple(tuple(frozenset(cl) for cl in comp) for comp in self.components)
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "edges", edges)
        m = len(comps)
        if m == 0:
            raise ValueError("a curve needs at least one component")
        if len(edges) != m - 1:
            raise ValueError(f"{m} components need {m - 1} edges, got {len(edges)}")
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            if not (0 <= a < m and 0 <= b < m) or a == b:
                raise ValueError(f"bad edge ({a}, {b})")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ValueError("the dual graph has a cycle")
            parent[ra] = rb
        marks: list[int] = []
        for comp in comps:
            for cl in comp:
                if not cl:
                    raise ValueError("empty cluster")
                marks.extend(cl)
        if sorted(marks) != list(range(1, len(marks) + 1)):
            raise ValueError("clusters must partition the marks 1..n")
        if self.positions is not None:
            pos = tuple(tuple(comp) for comp in self.positions)
            if [len(p) for p in pos] != [len(comp) for comp in comps]:
                raise ValueError("one position per cluster is required")
            object.__setattr__(self, "positions", pos)
            if self.edge_positions is None or len(self.edge_positions) != len(edges):
                raise ValueError("edge positions are required with cluster positions")
            object.__setattr__(self, "edge_positions", tuple(tuple(e) for e in self.edge_positions))
            for i in range(m):
                pts = list(pos[i]) + [self.node_position(i, j) for j in self.neighbors(i)]
                if len(set(pts)) != len(pts):
                    raise ValueError(f"special points of component {i} are not distinct")

    # -- structure -------------------------------------------------------
    @property
    def n(self) -> int:
        return sum(len(cl) for comp in self.components for cl in comp)

    def neighbors(self, i: int) -> list[int]:
        return [b if a == i else a for a, b in self.edges if i in (a, b)]

    def degree(self, i: int) -> int:
        return sum(i in e for e in self.edges)

    def marks(self, i: int) -> frozenset:
        return frozenset().union(*self.components[i]) if self.components[i] else frozenset()

    def weight(self, i: int, c: Sequence) -> Fraction:
        return _cluster_weight(self.marks(i), _weights(c))

    def node_position(self, i: int, j: int) -> P1Point:
        for e, (a, b) in enumerate(self.edges):
            if (a, b) == (i, j):
                return self.edge_positions[e][0]
            if (a, b) == (j, i):
                return self.edge_positions[e][1]
        raise KeyError((i, j))

    @property
    def has_positions(self) -> bool:
        return self.positions is not None

    def is_chain(self) -> bool:
        return all(self.degree(i) <= 2 for i in range(len(self.components)))

    def chain_order(self) -> list[int]:
        """Component indices along the path, starting at the end whose
        component holds the smallest mark."""
        if not self.is_chain():
            raise ValueError("not a chain")
        m = len(self.components)
        if m == 1:
            return [0]
        ends = [i for i in range(m) if self.degree(i) == 1]
        start = min(ends, key=lambda i: min(self.marks(i), default=self.n + 1))
        order, prev = [start], None
        while len(order) < m:
            nxt = [j for j in self.neighbors(order[-1]) if j != prev]
            prev = order[-1]
            order.append(nxt[0])
        return order

    def shape(self) -> str:
        """Canonical string of the marked tree up to relabelling components."""
        labels = [
            ",".join(_fmt(cl) for cl in sorted(comp, key=lambda cl: sorted(cl)))
            for comp in self.components
        ]

        def enc(v, parent):
            kids = sorted(enc(u, v) for u in self.neighbors(v) if u != parent)
            return "(" + labels[v] + "".join(kids) + ")"

        return min(enc(r, None) for r in range(len(self.components)))

    def without_positions(self) -> "MarkedTree":
        return MarkedTree(self.components, self.edges)


def single_component(clusters: Iterable[Iterable[int]], positions=None) -> MarkedTree:
    return MarkedTree((tuple(frozenset(cl) for cl in clusters),), (),
                      None if positions is None else (tuple(positions),),
                      None if positions is None else ())


def chain(*components: Iterable[Iterable[int]]) -> MarkedTree:
    """A chain of components, each given as a list of clusters."""
    comps = tuple(tuple(frozenset(cl) for cl in comp) for comp in components)
    return MarkedTree(comps, tuple((i, i + 1) for i in range(len(comps) - 1)))


def _check_weights(c: Sequence, n: int) -> tuple[Fraction, ...]:
    c = _weights(c)
    if len(c) != n:
        raise ValueError(f"{len(c)} weights for {n} marks")
    bad = [i for i, v in enumerate(c, start=1) if not 0 < v <= 1]
    if bad:
        raise ValueError(f"weights must lie in (0, 1]; violated at indices {bad}")
    return c


def hassett_violations(T: MarkedTree, c: Sequence) -> list[str]:
    c = _check_weights(c, T.n)
    out = []
    for i, comp in enumerate(T.components):
        w = T.weight(i, c)
        if w + T.degree(i) <= 2:
            out.append(f"component {i}: weight {w} + {T.degree(i)} nodes <= 2")
        for cl in comp:
            if _cluster_weight(cl, c) > 1:
                out.append(f"cluster {_fmt(cl)} has weight {_cluster_weight(cl, c)} > 1")
    return out


def is_hassett_stable(T: MarkedTree, c: Sequence) -> bool:
    """Each component has mark weight plus node count above 2, and colliding
    marks weigh at most 1."""
    return not hassett_violations(T, c)


def reduce(T: MarkedTree, c: Sequence, rng: random.Random | None = None) -> MarkedTree:
    """Contract components that are unstable for the weights ``c``.

    A violating leaf collapses to its node point on the neighbour, its marks
    becoming one cluster there; a violating (markless) bridge is replaced by a
    direct edge.  Repeats until nothing violates.  ``rng`` picks the order
    among violating components (the result does not depend on it).
    """
    c = _check_weights(c, T.n)
    placed = T.has_positions
    comps: dict[int, list[tuple[frozenset, P1Point | None]]] = {
        i: [(cl, T.positions[i][k] if placed else None) for k, cl in enumerate(comp)]
        for i, comp in enumerate(T.components)
    }
    adj: dict[int, dict[int, P1Point | None]] = {i: {} for i in comps}
    for e, (a, b) in enumerate(T.edges):
        adj[a][b] = T.edge_positions[e][0] if placed else None
        adj[b][a] = T.edge_positions[e][1] if placed else None

    def weight(i):
        return sum((_cluster_weight(cl, c) for cl, _ in comps[i]), Fraction(0))

    while True:
        bad = [i for i in sorted(comps) if weight(i) + len(adj[i]) <= 2]
        if not bad:
            break
        i = rng.choice(bad) if rng is not None else bad[0]
        nbrs = adj[i]
        if not nbrs:
            raise ValueError(f"total weight {weight(i)} <= 2: the weights admit no stable curve")
        if len(nbrs) == 1:
            (j,) = nbrs
            merged = frozenset().union(*(cl for cl, _ in comps[i])) if comps[i] else frozenset()
            if merged:
                if _cluster_weight(merged, c) > 1:
                    raise ValueError(f"merged cluster {_fmt(merged)} exceeds weight 1")
                comps[j].append((merged, adj[j][i]))
            del adj[j][i]
        elif len(nbrs) == 2:
            j, k = nbrs
            pj, pk = adj[j].pop(i), adj[k].pop(i)
            adj[j][k], adj[k][j] = pj, pk
        else:  # pragma: no cover - weight + degree > 2 whenever degree >= 3
            raise AssertionError("component of degree >= 3 cannot violate")
        del comps[i], adj[i]

    ids = sorted(comps)
    index = {old: new for new, old in enumerate(ids)}
    new_comps = []
    new_pos = []
    for old in ids:
        items = sorted(comps[old], key=lambda item: min(item[0]))
        new_comps.append(tuple(cl for cl, _ in items))
        new_pos.append(tuple(p for _, p in items))
    edges, edge_pos = [], []
    for a in ids:
        for b, pa in sorted(adj[a].items()):
            if a < b:
                edges.append((index[a], index[b]))
                edge_pos.append((pa, adj[b][a]))
    if placed:
        return MarkedTree(tuple(new_comps), tuple(edges), tuple(new_pos), tuple(edge_pos))
    return MarkedTree(tuple(new_comps), tuple(edges))


class ChainCurve(MarkedTree):
    """A marked tree whose dual graph is a path, components stored in path order."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_chain():
            raise ValueError("dual graph is not a path")
        if any(tuple(e) != (i, i + 1) for i, e in enumerate(self.edges)):
            raise ValueError("chain components must be listed in path order")


def as_chain(T: MarkedTree) -> ChainCurve:
    """Reorder the components of a path-shaped tree along the path."""
    order = T.chain_order()
    comps = tuple(T.components[i] for i in order)
    edges = tuple((k, k + 1) for k in range(len(order) - 1))
    if not T.has_positions:
        return ChainCurve(comps, edges)
    pos = tuple(T.positions[i] for i in order)
    epos = tuple((T.node_position(order[k], order[k + 1]), T.node_position(order[k + 1], order[k]))
                 for k in range(len(order) - 1))
    return ChainCurve(comps, edges, pos, epos)


# ---------------------------------------------------------------------------
# conic images

@dataclass(frozen=True)
class NonSingularImage:
    clusters: tuple[frozenset, ...]
    positions: tuple[P1Point, ...] | None = None


@dataclass(frozen=True)
class Branch:
    """One line of a nodal image: its clusters off the node, optionally placed."""

    clusters: tuple[frozenset, ...]
    positions: tuple[P1Point, ...] | None = None
    node_position: P1Point | None = None

    @property
    def marks(self) -> frozenset:
        return frozenset().union(*self.clusters) if self.clusters else frozenset()


@dataclass(frozen=True)
class NodalImage:
    left: Branch
    right: Branch
    node: frozenset


ConicImage = NonSingularImage | NodalImage


def _on_cross_section(c: Sequence[Fraction], gamma: Fraction) -> bool:
    return sum(c, Fraction(0)) + gamma == 3 and 0 < gamma < 1


def conic_image(T: MarkedTree, c: Sequence, gamma, check: bool = True,
                allow_boundary: bool = False) -> ConicImage:
    """Contract the inner components of a Hassett-stable chain.

    One component gives a smooth conic; otherwise the two end components
    become the lines of a nodal conic and every mark on an inner component
    goes to the node.  With ``check`` the linearization must satisfy
    ``c + gamma = 3`` with ``0 < gamma < 1``; unless ``allow_boundary``, a
    cluster of weight exactly 1 (an equality case) is refused.
    """
    c = _check_weights(c, T.n)
    gamma = Fraction(gamma)
    problems = hassett_violations(T, c)
    if problems:
        raise ValueError("curve is not Hassett stable: " + "; ".join(problems))
    if check and not _on_cross_section(c, gamma):
        raise ValueError("linearization must satisfy c + gamma = 3 with 0 < gamma < 1")
    if not allow_boundary:
        heavy = [cl for comp in T.components for cl in comp if _cluster_weight(cl, c) == 1]
        if heavy:
            raise ValueError(f"boundary input: cluster {_fmt(heavy[0])} has weight exactly 1")
    ch = T if isinstance(T, ChainCurve) else as_chain(T)
    placed = ch.has_positions
    if len(ch.components) == 1:
        return NonSingularImage(ch.components[0], ch.positions[0] if placed else None)
    last = len(ch.components) - 1
    inner = frozenset().union(*(ch.marks(i) for i in range(1, last)))

    def branch(i, j):
        if not placed:
            return Branch(ch.components[i])
        return Branch(ch.components[i], ch.positions[i], ch.node_position(i, j))

    a, b = branch(0, 1), branch(last, last - 1)
    if min(b.marks, default=ch.n + 1) < min(a.marks, default=ch.n + 1):
        a, b = b, a
    return NodalImage(a, b, inner)


def image_report(img: ConicImage, c: Sequence, gamma) -> StabilityReport:
    c, gamma = _weights(c), Fraction(gamma)
    total = sum(c, Fraction(0))
    if isinstance(img, NonSingularImage):
        ineqs = nonsingular_inequalities(
            [(_fmt(cl), _cluster_weight(cl, c)) for cl in img.clusters], total, gamma)
        return StabilityReport(verdict_from_inequalities(ineqs), "nonsingular", tuple(ineqs))
    smooth = [(_fmt(cl), _cluster_weight(cl, c)) for br in (img.left, img.right) for cl in br.clusters]
    comps = [(f"through {_fmt(br.marks)}", _cluster_weight(br.marks, c)) for br in (img.left, img.right)]
    ineqs = nodal_inequalities(smooth, _cluster_weight(img.node, c), comps, total, gamma)
    verdict = Verdict.UNSTABLE if gamma > total / 2 else verdict_from_inequalities(ineqs)
    return StabilityReport(verdict, "nodal", tuple(ineqs))


def image_is_git_stable(img: ConicImage, c: Sequence, gamma) -> Verdict:
    """GIT verdict of an image: with ``c + gamma = 3`` this is node weight
    below ``c - 2``, smooth-point weight below 1, and weight above 1 on each
    line away from the node."""
    return image_report(img, c, gamma).verdict


def _distinct_values(count: int, taken: Iterable[Fraction] = ()) -> list[Fraction]:
    taken = set(taken)
    out, v = [], 0
    while len(out) < count:
        if Fraction(v) not in taken:
            out.append(Fraction(v))
        v += 1
    return out


def realize_image(img: ConicImage) -> PointedConic:
    """A concrete pointed conic of the given type.

    Smooth images go onto ``y^2 = xz`` through ``t -> (1:t:t^2)``; nodal ones
    onto ``xy = 0`` with the node at ``(0:0:1)``.  Stored positions are used
    when present (after moving each line's node point to infinity).
    """
    n = sum(len(cl) for cl in _all_clusters(img))
    pts: list[ProjPoint | None] = [None] * n
    if isinstance(img, NonSingularImage):
        params = img.positions or tuple(P1Point(v) for v in _distinct_values(len(img.clusters)))
        for cl, p in zip(img.clusters, params):
            for i in cl:
                pts[i - 1] = veronese(p)
        return PointedConic(ConicForm(0, 0, -1, 1, 0, 0), pts)
    for side, br in enumerate((img.left, img.right)):
        vals = _affine_values(br)
        for cl, v in zip(br.clusters, vals):
            for i in cl:
                pts[i - 1] = ProjPoint(0, 1, v) if side == 0 else ProjPoint(1, 0, v)
    for i in img.node:
        pts[i - 1] = ProjPoint(0, 0, 1)
    return PointedConic(ConicForm(0, 1, 0, 0, 0, 0), pts)


def _all_clusters(img: ConicImage):
    if isinstance(img, NonSingularImage):
        return list(img.clusters)
    return list(img.left.clusters) + list(img.right.clusters) + ([img.node] if img.node else [])


def _affine_values(br: Branch) -> list[Fraction]:
    """Cluster coordinates with the node sent to infinity."""
    if br.positions is None:
        return _distinct_values(len(br.clusters))
    if len(br.clusters) < 2:
        return [Fraction(0)] * len(br.clusters)
    # send node -> infinity and the first two clusters -> 0, 1
    vals = mobius_normal_form(br.positions[0], br.positions[1], br.node_position, br.positions)
    return list(vals)


def canonical_form(img: ConicImage):
    """Projective normal form of a placed image, for equivalence tests.

    Smooth: the clusters ordered by smallest mark, the first three sent to
    0, 1, infinity.  Nodal: on each line the node goes to infinity and the
    first two clusters to 0, 1; the two lines are compared as an unordered pair.
    """
    if isinstance(img, NonSingularImage):
        if img.positions is None:
            raise ValueError("canonical forms need placed images")
        order = sorted(range(len(img.clusters)), key=lambda k: min(img.clusters[k]))
        cls = [tuple(sorted(img.clusters[k])) for k in order]
        pos = [img.positions[k] for k in order]
        if len(pos) < 3:
            return ("smooth", tuple(cls), ())
        return ("smooth", tuple(cls), mobius_normal_form(pos[0], pos[1], pos[2], pos[3:]))

    def branch_form(br: Branch):
        if br.positions is None:
            raise ValueError("canonical forms need placed images")
        order = sorted(range(len(br.clusters)), key=lambda k: min(br.clusters[k]))
        cls = tuple(tuple(sorted(br.clusters[k])) for k in order)
        pos = [br.positions[k] for k in order]
        if len(pos) < 2:
            return (cls, ())
        return (cls, mobius_normal_form(pos[0], pos[1], br.node_position, pos[2:]))

    return ("nodal", tuple(sorted(img.node)),
            frozenset({branch_form(img.left), branch_form(img.right)}))


# ---------------------------------------------------------------------------
# F-curves

@dataclass(frozen=True)
class FCurvePartition:
    parts: tuple[frozenset, frozenset, frozenset, frozenset]

    def __init__(self, parts: Iterable[Iterable[int]]):
        ps = tuple(frozenset(p) for p in parts)
        if len(ps) != 4 or any(not p for p in ps):
            raise ValueError("an F-curve needs four nonempty parts")
        allm = sorted(i for p in ps for i in p)
        if allm != list(range(1, len(allm) + 1)):
            raise ValueError("parts must partition 1..n")
        object.__setattr__(self, "parts", ps)

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    def leg_weights(self, c: Sequence) -> list[Fraction]:
        c = _weights(c)
        return sorted(_cluster_weight(p, c) for p in self.parts)


def fcurve_hassett_contracted(P: FCurvePartition, c: Sequence) -> bool:
    """Contracted already in the weighted moduli space: the three lightest legs
    weigh at most 1 together."""
    x = P.leg_weights(_check_weights(c, P.n))
    return x[0] + x[1] + x[2] <= 1


def fcurve_contracted(P: FCurvePartition, c: Sequence, gamma) -> bool:
    """Contracted by the map to the conic quotient (``0 < gamma < 1``)."""
    gamma = Fraction(gamma)
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    x = P.leg_weights(_check_weights(c, P.n))
    return x[0] + x[1] + x[2] <= 1 or x[2] > 1


def fcurve_member(P: FCurvePartition, cross_ratio) -> MarkedTree:
    """A placed curve of the F-curve family: the spine carries its four special
    points at ``0, 1, inf, cross_ratio``; a part with one mark sits on the spine,
    a larger part lives on a leg component attached there."""
    spine_pts = [P1Point(0), P1Point(1), P1Point(None), P1Point(cross_ratio)]
    if len(set(spine_pts)) < 4:
        raise ValueError("cross ratio must avoid 0, 1 and infinity")
    comps: list[tuple] = [()]
    pos: list[tuple] = [()]
    edges, epos = [], []
    for part, at in zip(P.parts, spine_pts):
        if len(part) == 1:
            comps[0] += (part,)
            pos[0] += (at,)
            continue
        marks = sorted(part)
        comps.append(tuple(frozenset({m}) for m in marks))
        pos.append(tuple(P1Point(k) for k in range(1, len(marks) + 1)))
        edges.append((0, len(comps) - 1))
        epos.append((at, P1Point(0)))
    return MarkedTree(tuple(comps), tuple(edges), tuple(pos), tuple(epos))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PipelineResult:
    chain: ChainCurve
    image: ConicImage
    verdict: Verdict
    flags: tuple[str, ...] = ()


def semistable_reduction_pipeline(T: MarkedTree, c: Sequence, gamma, check: bool = True,
                                  allow_boundary: bool = False) -> PipelineResult:
    """Reduce a stable curve to its weighted model, contract to a conic, judge it.

    With ``check=False`` off-cross-section linearizations are accepted and
    reported in ``flags`` together with any boundary clusters.
    """
    c = _check_weights(c, T.n)
    gamma = Fraction(gamma)
    flags = []
    if not _on_cross_section(c, gamma):
        if check:
            raise ValueError("linearization must satisfy c + gamma = 3 with 0 < gamma < 1")
        flags.append("linearization off the c + gamma = 3, 0 < gamma < 1 cross-section")
    reduced = reduce(T, c)
    if not reduced.is_chain():
        raise ValueError("reduction did not produce a chain")
    ch = as_chain(reduced)
    for comp in ch.components:
        for cl in comp:
            if _cluster_weight(cl, c) == 1:
                flags.append(f"cluster {_fmt(cl)} has weight exactly 1")
    img = conic_image(ch, c, gamma, check=check, allow_boundary=allow_boundary or not check)
    verdict = image_is_git_stable(img, c, gamma)
    if verdict is not Verdict.STABLE:
        flags.append("image not stable: wall or boundary phenomenon")
    return PipelineResult(ch, img, verdict, tuple(flags))


def perturb_off_wall(lin: Linearization, eps) -> Linearization:
    """Alias of :func:`conicgit.weights.perturb` kept next to the pipeline."""
    from .weights import perturb
    return perturb(lin, eps)
