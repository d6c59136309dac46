"""Independent reference computations used by the tests.

Nothing here calls the library's weight or frame code: coordinates are changed
by Gaussian elimination, conics by expanding the substituted quadratic, and
the minimal weight is taken over the full Segre product.
"""

from fractions import Fraction
from itertools import combinations, product

MONOS = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def solve(m, v):
    """``m^-1 v`` by Gauss-Jordan elimination over Q."""
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, v)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        a[col] = [x / a[col][col] for x in a[col]]
        for r in range(3):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][3] for r in range(3)]


def conic_in_frame(coeffs, m):
    """Coefficients of ``f(m q)`` as a polynomial in ``q`` (same monomial order)."""
    out = [Fraction(0)] * 6
    # f(x) = sum_c a_c x^c with x = m q; expand by evaluating each monomial product
    for a, (i, j, k) in zip(coeffs, MONOS):
        if not a:
            continue
        factors = [0] * i + [1] * j + [2] * k
        rows = [m[f] for f in factors]
        for c1 in range(3):
            for c2 in range(3):
                exps = [0, 0, 0]
                exps[c1] += 1
                exps[c2] += 1
                out[MONOS.index(tuple(exps))] += Fraction(a) * rows[0][c1] * rows[1][c2]
    return out


def segre_mu(coeffs, points, gamma, c, m, b):
    """Minimum weight over every nonzero Segre coordinate, for the subgroup
    acting with exponents ``(b, -1-b, 1)`` on the columns of ``m``."""
    b = Fraction(b)
    e = (b, -1 - b, Fraction(1))
    conic = conic_in_frame(coeffs, m)
    qs = [solve(m, p) for p in points]
    best = None
    for mono, a in zip(MONOS, conic):
        if not a:
            continue
        base = -gamma * sum(x * y for x, y in zip(mono, e))
        for choice in product(range(3), repeat=len(qs)):
            if any(q[r] == 0 for q, r in zip(qs, choice)):
                continue
            w = base + sum(cl * e[r] for cl, r in zip(c, choice))
            best = w if best is None else min(best, w)
    return best


def subset_sums(c):
    n = len(c)
    for r in range(1, n):
        for ix in combinations(range(n), r):
            yield ix, sum((c[i] for i in ix), Fraction(0))


def normalized_low(gamma, c):
    """Rescale to ``c + gamma = 3``."""
    s = Fraction(3) / (sum(c) + gamma)
    return gamma * s, [v * s for v in c]
