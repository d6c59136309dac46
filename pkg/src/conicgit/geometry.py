"""Exact projective-plane primitives: points, conic forms, lines and pointed conics.

Everything is integral or :class:`fractions.Fraction`; there is no floating
point anywhere in the package.  Conics are stored by their six monomial
coefficients ``(a200, a110, a101, a020, a011, a002)`` and all matrix work is
done with the doubled symmetric matrix ``2A`` so that it stays integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Iterator, Sequence

# exponents (i, j, k) of x^i y^j z^k, in coefficient order
MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
)
MONOMIAL_NAMES = ("x^2", "xy", "xz", "y^2", "yz", "z^2")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: an exact library must not silently round.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"malformed rational {value!r}; use 'p/q' or an integer")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def primitive_vector(values: Iterable) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    fracs = [as_fraction(v) for v in values]
    if not any(fracs):
        raise ValueError("the zero vector is not a projective point")
    den = lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# small exact linear algebra on 3-vectors and 3x3 matrices (row-major tuples)

def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(m: Sequence[Sequence]):
    return dot(m[0], cross(m[1], m[2]))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(tuple(m[r][c] for r in range(3)) for c in range(3))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def adjugate(m: Sequence[Sequence]) -> tuple:
    """Classical adjoint: ``adj(m) @ m == det(m) * I``."""
    c0, c1, c2 = (tuple(m[r][c] for r in range(3)) for c in range(3))
    # rows of the adjugate are cross products of column pairs
    return (cross(c1, c2), cross(c2, c0), cross(c0, c1))


def rank3(m: Sequence[Sequence]) -> int:
    if det3(m):
        return 3
    for r in range(3):
        for s in range(r + 1, 3):
            if any(cross(m[r], m[s])):
                return 2
    return 1 if any(any(row) for row in m) else 0


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2 (or a line, in dual coordinates) in canonical integral form."""

    coords: tuple[int, int, int]

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError(f"a point of P^2 needs 3 coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", primitive_vector(coords))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __repr__(self) -> str:
        x, y, z = self.coords
        return f"({x}:{y}:{z})"

    def transform(self, g: Sequence[Sequence]) -> "ProjPoint":
        return ProjPoint(matvec(g, self.coords))


def line_through(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    """The line joining two distinct points, as a dual-coordinate ProjPoint."""
    if p == q:
        raise ValueError("a line needs two distinct points")
    return ProjPoint(cross(p.coords, q.coords))


def on_line(line: ProjPoint, p: ProjPoint) -> bool:
    return dot(line.coords, p.coords) == 0


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return det3((p.coords, q.coords, r.coords)) == 0


def points_on_line(line: ProjPoint) -> tuple[ProjPoint, ProjPoint]:
    """Two distinct points spanning ``line``."""
    found: list[tuple] = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        v = cross(line.coords, e)
        if any(v) and (not found or any(cross(found[0], v))):
            found.append(v)
        if len(found) == 2:
            break
    return ProjPoint(found[0]), ProjPoint(found[1])


@dataclass(frozen=True)
class ConicForm:
    """A plane conic ``sum a_ijk x^i y^j z^k`` with coprime integer coefficients."""

    coefficients: tuple[int, int, int, int, int, int]

    def __init__(self, *coefficients):
        if len(coefficients) == 1 and not isinstance(coefficients[0], (int, Fraction, str)):
            coefficients = tuple(coefficients[0])
        if len(coefficients) != 6:
            raise ValueError(f"a conic needs 6 coefficients, got {len(coefficients)}")
        object.__setattr__(self, "coefficients", primitive_vector(coefficients))

    @classmethod
    def from_doubled_matrix(cls, s: Sequence[Sequence]) -> "ConicForm":
        return cls(
            Fraction(s[0][0]) / 2, s[0][1], s[0][2],
            Fraction(s[1][1]) / 2, s[1][2], Fraction(s[2][2]) / 2,
        )

    @property
    def doubled_matrix(self) -> tuple:
        """The integral symmetric matrix 2A (same rank and kernel as A)."""
        a200, a110, a101, a020, a011, a002 = self.coefficients
        return (
            (2 * a200, a110, a101),
            (a110, 2 * a020, a011),
            (a101, a011, 2 * a002),
        )

    @property
    def rank(self) -> int:
        return rank3(self.doubled_matrix)

    def __call__(self, p) -> int:
        x, y, z = p
        return sum(a * x**i * y**j * z**k
                   for a, (i, j, k) in zip(self.coefficients, MONOMIALS))

    def polar(self, p, q) -> int:
        """The doubled bilinear form ``2 p^T A q``."""
        return dot(p, matvec(self.doubled_matrix, q))

    def tangent_line(self, p: ProjPoint) -> ProjPoint:
        """Polar line of ``p``; the tangent line when ``p`` is a smooth point."""
        return ProjPoint(matvec(self.doubled_matrix, p.coords))

    def transform(self, g: Sequence[Sequence]) -> "ConicForm":
        """Image of the conic under the point map ``p -> g p``.

        The matrix becomes ``(g^-1)^T A g^-1``; the adjugate is used in place of
        the inverse since conics are only defined up to scale.
        """
        h = adjugate(g)
        return ConicForm.from_doubled_matrix(matmul(transpose(h), matmul(self.doubled_matrix, h)))

    def __repr__(self) -> str:
        terms = [f"{a}*{name}" for a, name in zip(self.coefficients, MONOMIAL_NAMES) if a]
        return "ConicForm(" + " + ".join(terms) + ")"


def incident(form: ConicForm, p: ProjPoint) -> bool:
    """True iff ``p`` lies on the conic."""
    return form(p.coords) == 0


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class NonSingular:
    rank: int = 3


@dataclass(frozen=True)
class Nodal:
    node: ProjPoint
    rank: int = 2


@dataclass(frozen=True)
class DoubleLine:
    line: ProjPoint
    rank: int = 1


ConicClass = NonSingular | Nodal | DoubleLine


def classify_conic(form: ConicForm) -> ConicClass:
    """Classify by the rank of the associated symmetric matrix.

    >>> classify_conic(ConicForm(0, 1, 0, 0, 0, 0))
    Nodal(node=(0:0:1), rank=2)
    """
    s = form.doubled_matrix
    r = rank3(s)
    if r == 3:
        return NonSingular()
    if r == 2:
        for i in range(3):
            for j in range(i + 1, 3):
                k = cross(s[i], s[j])
                if any(k):
                    return Nodal(ProjPoint(k))
    # rank 1: 2A is a multiple of v v^T for any nonzero row v
    row = next(row for row in s if any(row))
    return DoubleLine(ProjPoint(row))


def same_component(node: ProjPoint, p: ProjPoint, q: ProjPoint) -> bool:
    """Whether two points of a line pair lie on the same line through ``node``.

    Decided by collinearity with the node, which avoids factoring the
    quadratic (the two lines may be conjugate irrational lines).
    """
    if p == node or q == node:
        raise ValueError("same_component is undefined at the node itself")
    return collinear(node, p, q)


# ---------------------------------------------------------------------------
# P^1 points and the stereographic parametrization

@dataclass(frozen=True, order=True)
class P1Point:
    """A point ``(s:t)`` of P^1 in canonical integral form; ``t/s`` is the affine value."""

    s: int
    t: int

    def __init__(self, s, t=None):
        if t is None:
            if s is None or (isinstance(s, str) and s.strip() in ("inf", "oo", "infinity")):
                s, t = 0, 1
            else:
                s, t = 1, as_fraction(s)
        ps, pt = primitive_vector((s, t))
        object.__setattr__(self, "s", ps)
        object.__setattr__(self, "t", pt)

    @property
    def value(self) -> Fraction | None:
        """Affine coordinate, or None at infinity."""
        return None if self.s == 0 else Fraction(self.t, self.s)

    def __repr__(self) -> str:
        v = self.value
        return "P1(inf)" if v is None else f"P1({v})"


def bracket(p: P1Point, q: P1Point) -> int:
    return p.s * q.t - p.t * q.s


def mobius_normal_form(zero: P1Point, one: P1Point, infinity: P1Point,
                       others: Sequence[P1Point]) -> tuple[Fraction | None, ...]:
    """Affine values of ``others`` after the Mobius map sending the first three
    points to 0, 1 and infinity (a labelled cross-ratio normal form)."""
    if len({zero, one, infinity}) < 3:
        raise ValueError("normal form needs three distinct anchor points")
    out = []
    for z in others:
        num = bracket(zero, z) * bracket(infinity, one)
        den = bracket(infinity, z) * bracket(zero, one)
        out.append(None if den == 0 else Fraction(num, den))
    return tuple(out)


class ConicParametrization:
    """Rational parametrization of a nonsingular conic by the pencil of lines
    through a rational base point.

    The parameter ``(s:t)`` names the line through ``base`` and ``s*q1 + t*q2``,
    where ``q1, q2`` are the first two standard basis vectors completing
    ``base`` to a basis; the image is the residual intersection point.  For
    ``y^2 - xz`` with base ``(1:0:0)`` this is ``t -> (1:t:t^2)``.
    """

    def __init__(self, form: ConicForm, base: ProjPoint):
        if form.rank != 3:
            raise ValueError("parametrization needs a nonsingular conic")
        if not incident(form, base):
            raise ValueError(f"base point {base} is not on the conic")
        self.form = form
        self.base = base
        units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        self.q1, self.q2 = next(
            (units[i], units[j])
            for i in range(3) for j in range(i + 1, 3)
            if det3((base.coords, units[i], units[j])) != 0
        )
        self._frame = (base.coords, self.q1, self.q2)

    def __call__(self, param) -> ProjPoint:
        p = param if isinstance(param, P1Point) else P1Point(param)
        q = tuple(p.s * a + p.t * b for a, b in zip(self.q1, self.q2))
        fq = self.form(q)
        bpq = self.form.polar(self.base.coords, q)
        # residual root of f(base + lam*q) = lam*(bpq + lam*fq)
        return ProjPoint(tuple(fq * a - bpq * b for a, b in zip(self.base.coords, q)))

    def inverse(self, point: ProjPoint) -> P1Point:
        if not incident(self.form, point):
            raise ValueError(f"{point} is not on the conic")
        if point == self.base:
            # tangent direction: polar(base, s*q1 + t*q2) = 0
            b1 = self.form.polar(self.base.coords, self.q1)
            b2 = self.form.polar(self.base.coords, self.q2)
            return P1Point(b2, -b1)
        # coordinates of point in the basis (base, q1, q2); keep the q-part
        m = transpose(self._frame)
        _, s, t = matvec(adjugate(m), point.coords)
        return P1Point(s, t)


def parametrize_conic(form: ConicForm, base: ProjPoint) -> ConicParametrization:
    return ConicParametrization(form, base)


def veronese(param) -> ProjPoint:
    """``t -> (1:t:t^2)`` onto ``y^2 = xz``; infinity goes to ``(0:0:1)``."""
    p = param if isinstance(param, P1Point) else P1Point(param)
    return ProjPoint(p.s * p.s, p.s * p.t, p.t * p.t)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointedConic:
    """A conic with ``n`` marked points on it (a point of Con(n))."""

    form: ConicForm
    points: tuple[ProjPoint, ...]

    def __init__(self, form, points):
        form = form if isinstance(form, ConicForm) else ConicForm(form)
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(p) for p in points)
        if not pts:
            raise ValueError("a pointed conic needs at least one marked point")
        for idx, p in enumerate(pts, start=1):
            if not incident(form, p):
                raise ValueError(f"marked point {idx} = {p} is not on the conic {form}")
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def conic_class(self) -> ConicClass:
        return classify_conic(self.form)

    def transform(self, g: Sequence[Sequence]) -> "PointedConic":
        """Act by ``g``: ``A -> (g^-1)^T A g^-1`` and ``x_l -> g x_l``."""
        if det3(g) == 0:
            raise ValueError("coordinate change must be invertible")
        return PointedConic(self.form.transform(g), [p.transform(g) for p in self.points])

    def locations(self) -> dict[ProjPoint, tuple[int, ...]]:
        """Distinct marked locations with the 1-based indices sitting there."""
        out: dict[ProjPoint, list[int]] = {}
        for idx, p in enumerate(self.points, start=1):
            out.setdefault(p, []).append(idx)
        return {p: tuple(ix) for p, ix in out.items()}
