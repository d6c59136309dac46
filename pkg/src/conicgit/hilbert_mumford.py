"""Hilbert-Mumford weights for pointed conics and a flag-search instability oracle.

A one-parameter subgroup of SL_3 is, after diagonalizing and rescaling,
``diag(t^b, t^(-1-b), t)`` in some basis ``(e1, e2, e3)`` with
``-2 <= b <= -1/2``.  For a fixed basis the minimal weight over nonzero
Segre coordinates is a concave piecewise-linear function of ``b``; the oracle
maximizes it exactly over a finite family of bases adapted to the
configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .geometry import (
    MONOMIALS,
    ConicForm,
    DoubleLine,
    Nodal,
    PointedConic,
    ProjPoint,
    adjugate,
    classify_conic,
    det3,
    incident,
    line_through,
    matmul,
    matvec,
    on_line,
    points_on_line,
    transpose,
)
from .weights import Linearization, Verdict

B_MIN = Fraction(-2)
B_MAX = Fraction(-1, 2)

# linear functions of b stored as (slope, intercept)
Line = tuple[Fraction, Fraction]

# exponents of the basis directions e1, e2, e3: b, -1-b, 1
COORD_EXPONENTS: tuple[Line, ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(-1), Fraction(-1)),
    (Fraction(0), Fraction(1)),
)


def _check_b(b: Fraction) -> Fraction:
    b = Fraction(b)
    if not B_MIN <= b <= B_MAX:
        raise ValueError(f"b = {b} outside [-2, -1/2]")
    return b


def monomial_line(i: int, j: int, k: int) -> Line:
    """``wt(x^i y^j z^k) = i(1-b) + j(b+2) - 2`` as a linear function of b."""
    if min(i, j, k) < 0 or i + j + k != 2:
        raise ValueError(f"({i},{j},{k}) is not a quadratic monomial")
    return Fraction(j - i), Fraction(i + 2 * j - 2)


def _at(line: Line, b: Fraction) -> Fraction:
    return line[0] * b + line[1]


def coordinate_weight(i: int, j: int, k: int, cI, cJ, cK, b, gamma) -> Fraction:
    """Weight of the Segre coordinate ``a_ijk * w_{I,J,K}``."""
    b = _check_b(b)
    gamma, cI, cJ, cK = (Fraction(v) for v in (gamma, cI, cJ, cK))
    return gamma * _at(monomial_line(i, j, k), b) + b * cI + (-1 - b) * cJ + cK


def monomial_weights(b) -> tuple[Fraction, ...]:
    """Weights of ``x^2, xy, xz, y^2, yz, z^2`` at ``b``."""
    b = _check_b(b)
    return tuple(_at(monomial_line(*m), b) for m in MONOMIALS)


# chains of non-increasing weight (indices into MONOMIALS), the zero weight
# sitting between positions 2 and 3 of each chain
_CHAIN_LOW = (0, 1, 2, 3, 4, 5)    # x^2 >= xy >= xz >= 0 >= y^2 >= yz >= z^2
_CHAIN_HIGH = (0, 1, 3, 2, 4, 5)   # x^2 >= xy >= y^2 >= 0 >= xz >= yz >= z^2


def monomial_weight_order_check(b) -> tuple[tuple[int, ...], bool]:
    """The expected weight chain for ``b`` and whether it holds exactly.

    Returns ``(chain, holds)`` where ``chain`` lists monomial indices from
    heaviest to lightest (first chain for ``b <= -1``, second for ``b >= -1``).
    """
    w = monomial_weights(b)
    chain = _CHAIN_LOW if b <= -1 else _CHAIN_HIGH
    seq = [w[i] for i in chain]
    holds = all(x >= y for x, y in zip(seq, seq[1:])) and seq[2] >= 0 >= seq[3]
    return chain, holds


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OnePSFrame:
    """Ordered basis ``(e1, e2, e3)`` receiving exponents ``b, -1-b, 1``."""

    basis: tuple[ProjPoint, ProjPoint, ProjPoint]

    def __post_init__(self):
        if det3(tuple(p.coords for p in self.basis)) == 0:
            raise ValueError(f"degenerate frame {self.basis}")

    @classmethod
    def identity(cls) -> "OnePSFrame":
        return cls((ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)))

    @classmethod
    def from_columns(cls, m: Sequence[Sequence]) -> "OnePSFrame":
        return cls(tuple(ProjPoint(col) for col in transpose(m)))

    @property
    def matrix(self) -> tuple:
        """Columns are the basis vectors."""
        return transpose(tuple(p.coords for p in self.basis))


@dataclass(frozen=True)
class MuProfile:
    """Concave piecewise-linear minimal weight as a function of ``b``."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    @property
    def maximum(self) -> Fraction:
        return max(self.values)

    @property
    def argmax_b(self) -> Fraction:
        return self.breakpoints[self.values.index(self.maximum)]

    @property
    def pieces(self) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Segments ``(b0, b1, slope, intercept)``."""
        out = []
        pts = list(zip(self.breakpoints, self.values))
        for (b0, v0), (b1, v1) in zip(pts, pts[1:]):
            slope = (v1 - v0) / (b1 - b0)
            out.append((b0, b1, slope, v0 - slope * b0))
        return out

    def __call__(self, b) -> Fraction:
        b = _check_b(b)
        for b0, b1, slope, icpt in self.pieces:
            if b0 <= b <= b1:
                return slope * b + icpt
        return self.values[0]


def frame_coordinates(config: PointedConic, frame: OnePSFrame) -> tuple[tuple, list[tuple]]:
    """Conic coefficients and point coordinates expressed in the frame, up to scale.

    Only the zero pattern matters for weights, so the adjugate stands in for
    the inverse and everything stays integral.
    """
    m = frame.matrix
    s = matmul(transpose(m), matmul(config.form.doubled_matrix, m))
    # monomial coefficients of q^T (2A') q / 2 up to the common factor 2
    conic = (s[0][0], s[0][1], s[0][2], s[1][1], s[1][2], s[2][2])
    adj = adjugate(m)
    points = [matvec(adj, p.coords) for p in config.points]
    return conic, points


def _intersections(lines: Sequence[Line]) -> set[Fraction]:
    out = set()
    for (s1, i1), (s2, i2) in combinations(set(lines), 2):
        if s1 != s2:
            b = (i2 - i1) / (s1 - s2)
            if B_MIN < b < B_MAX:
                out.add(b)
    return out


def profile_from_families(families: Sequence[tuple[Fraction, Sequence[Line]]]) -> MuProfile:
    """Profile of ``sum factor * min(lines)``, evaluated at every breakpoint."""
    cands = {B_MIN, B_MAX}
    for _, lines in families:
        cands |= _intersections(lines)
    bs = tuple(sorted(cands))
    vals = tuple(
        sum((f * min(_at(ln, b) for ln in lines) for f, lines in families), Fraction(0))
        for b in bs
    )
    return MuProfile(bs, vals)


def mu_of_frame(config: PointedConic, lin: Linearization, frame: OnePSFrame) -> MuProfile:
    """Minimal Segre weight of ``config`` for the subgroups diagonal in ``frame``.

    Uses separability of the Segre product: the minimum over products is the
    conic's minimal monomial weight (times gamma) plus, for each point, its
    minimal coordinate exponent (times c_l).
    """
    if lin.n != config.n:
        raise ValueError(f"linearization has {lin.n} point weights, config has {config.n} points")
    conic, points = frame_coordinates(config, frame)
    families: list[tuple[Fraction, list[Line]]] = [
        (lin.gamma, [monomial_line(*mono) for a, mono in zip(conic, MONOMIALS) if a])
    ]
    for cl, q in zip(lin.c, points):
        families.append((cl, [COORD_EXPONENTS[r] for r in range(3) if q[r]]))
    return profile_from_families(families)


# ---------------------------------------------------------------------------
# adapted frames

def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


def rational_components(form: ConicForm) -> list[ProjPoint]:
    """The line components of a singular conic that are defined over Q."""
    cls = classify_conic(form)
    if isinstance(cls, DoubleLine):
        return [cls.line]
    if not isinstance(cls, Nodal):
        return []
    node = cls.node
    # restrict to a coordinate line missing the node: the two roots give the components
    for axis in range(3):
        if node[axis] == 0:
            continue
        line = ProjPoint(tuple(1 if r == axis else 0 for r in range(3)))
        u, w = points_on_line(line)
        a = form(u.coords)
        bb = form.polar(u.coords, w.coords)
        c = form(w.coords)
        # f(s*u + t*w) = a s^2 + bb s t + c t^2
        r = _isqrt_exact(bb * bb - 4 * a * c)
        if r is None:
            return []
        if a:
            roots = [(-bb + r, 2 * a), (-bb - r, 2 * a)]
        else:
            roots = [(1, 0), (c, -bb)]
        comps = []
        for s, t in roots:
            pt = tuple(s * x + t * y for x, y in zip(u.coords, w.coords))
            if any(pt) and form(pt) == 0:
                comps.append(line_through(node, ProjPoint(pt)))
        return list(dict.fromkeys(comps))
    return []


def _small_points(limit: int = 4):
    seen = set()
    for h in range(1, limit + 1):
        for v in product(range(-h, h + 1), repeat=3):
            if max(map(abs, v)) != h:
                continue
            p = ProjPoint(v)
            if p not in seen:
                seen.add(p)
                yield p


def adapted_frames(config: PointedConic) -> list[OnePSFrame]:
    """Finite family of bases built from the configuration's special points.

    ``e3`` runs over the marked locations and the node; the line ``L`` spanned
    by ``e2, e3`` runs over components through ``e3``, the tangent at ``e3``
    and lines joining ``e3`` to other special points; ``e2`` and ``e1`` are
    special points on / off ``L`` or one deterministic generic choice each.
    The identity frame is always included.
    """
    form = config.form
    cls = classify_conic(form)
    special = list(dict.fromkeys(config.points))
    if isinstance(cls, Nodal) and cls.node not in special:
        special.append(cls.node)
    components = rational_components(form)

    lines_at: dict[ProjPoint, list[ProjPoint]] = {}
    for e3 in special:
        cands = [ln for ln in components if on_line(ln, e3)]
        polar = matvec(form.doubled_matrix, e3.coords)
        if any(polar):
            cands.append(ProjPoint(polar))
        cands += [line_through(e3, q) for q in special if q != e3]
        lines_at[e3] = list(dict.fromkeys(cands))
    special_lines = set(components)
    for ls in lines_at.values():
        special_lines.update(ls)

    def generic_on(line: ProjPoint, avoid: ProjPoint) -> ProjPoint:
        u, w = points_on_line(line)
        inside = all(incident(form, p) for p in (u, w)) and incident(
            form, ProjPoint(tuple(a + b for a, b in zip(u.coords, w.coords))))
        for k in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7, 11, -11, 13):
            p = ProjPoint(tuple(a + k * b for a, b in zip(u.coords, w.coords)))
            if p == avoid or p in special:
                continue
            if not inside and incident(form, p):
                continue
            return p
        return w if w != avoid else u

    generic_off_cache: dict[ProjPoint, ProjPoint] = {}

    def generic_off(line: ProjPoint) -> ProjPoint:
        if line not in generic_off_cache:
            fallback = None
            for p in _small_points(6):
                if on_line(line, p):
                    continue
                fallback = fallback or p
                if p in special or incident(form, p):
                    continue
                if any(on_line(ln, p) for ln in special_lines):
                    continue
                generic_off_cache[line] = p
                break
            else:
                generic_off_cache[line] = fallback
        return generic_off_cache[line]

    frames = {OnePSFrame.identity(): None}
    for e3, lines in lines_at.items():
        for line in lines:
            e2s = [q for q in special if q != e3 and on_line(line, q)]
            e2s.append(generic_on(line, e3))
            e1s = [q for q in special if not on_line(line, q)]
            e1s.append(generic_off(line))
            for e2 in dict.fromkeys(e2s):
                for e1 in dict.fromkeys(e1s):
                    frames[OnePSFrame((e1, e2, e3))] = None
    return list(frames)


@dataclass(frozen=True)
class OracleResult:
    verdict: Verdict
    maximum: Fraction
    frame: OnePSFrame
    profile: MuProfile
    frames_checked: int


def oracle_search(config: PointedConic, lin: Linearization,
                  frames: Iterable[OnePSFrame] | None = None,
                  stop_when_unstable: bool = False) -> OracleResult:
    """Maximize the minimal weight over the adapted frames."""
    lin.require_positive()
    frames = adapted_frames(config) if frames is None else list(frames)
    best = None
    count = 0
    for frame in frames:
        prof = mu_of_frame(config, lin, frame)
        count += 1
        if best is None or prof.maximum > best[1].maximum:
            best = (frame, prof)
            if stop_when_unstable and prof.maximum > 0:
                break
    frame, prof = best
    return OracleResult(Verdict.from_max_weight(prof.maximum), prof.maximum, frame, prof, count)


def oracle_classify(config: PointedConic, lin: Linearization) -> Verdict:
    """Verdict from the largest minimal weight found over the adapted frames.

    An UNSTABLE answer is a certificate (an explicit destabilizing subgroup);
    the other answers are only as complete as the frame family.
    """
    return oracle_search(config, lin).verdict
