"""Linearization vectors and the tri-state stability verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .geometry import as_fraction


class Verdict(enum.Enum):
    STABLE = "STABLE"
    STRICTLY_SEMISTABLE = "STRICTLY_SEMISTABLE"
    UNSTABLE = "UNSTABLE"

    @property
    def semistable(self) -> bool:
        return self is not Verdict.UNSTABLE

    @classmethod
    def from_max_weight(cls, value: Fraction) -> "Verdict":
        """Sign convention of the numerical criterion: max over 1-PS of the
        minimal weight is < 0 (stable), = 0 (strictly semistable), > 0 (unstable)."""
        if value > 0:
            return cls.UNSTABLE
        return cls.STRICTLY_SEMISTABLE if value == 0 else cls.STABLE

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Linearization:
    """Weights ``(gamma, c_1..c_n)`` on P^5 x (P^2)^n restricted to Con(n)."""

    gamma: Fraction
    c: tuple[Fraction, ...]

    def __init__(self, gamma, c: Iterable):
        g = as_fraction(gamma)
        cs = tuple(as_fraction(v) for v in c)
        if not cs:
            raise ValueError("a linearization needs at least one point weight")
        if g < 0 or any(v < 0 for v in cs):
            raise ValueError("linearization weights must be nonnegative")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "c", cs)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def total(self) -> Fraction:
        return sum(self.c, Fraction(0))

    def subset_weight(self, indices: Iterable[int]) -> Fraction:
        """``c_I`` for 1-based indices."""
        return sum((self.c[i - 1] for i in indices), Fraction(0))

    def scaled(self, factor) -> "Linearization":
        f = as_fraction(factor)
        if f <= 0:
            raise ValueError("scale factor must be positive")
        return Linearization(self.gamma * f, [v * f for v in self.c])

    def require_positive(self) -> None:
        if self.gamma <= 0:
            raise ValueError("classifiers need gamma > 0")
        bad = [i for i, v in enumerate(self.c, start=1) if v <= 0]
        if bad:
            raise ValueError(f"classifiers need every c_i > 0; nonpositive at indices {bad}")

    def __repr__(self) -> str:
        cs = ", ".join(str(v) for v in self.c)
        return f"Linearization(gamma={self.gamma}, c=({cs}))"


def perturb(lin: Linearization, eps) -> Linearization:
    """The shift ``(gamma + eps, c - eps)`` used to move off a wall into an
    adjacent open chamber; every point weight drops by ``eps``."""
    e = as_fraction(eps)
    if e <= 0:
        raise ValueError("perturbation must be positive")
    if any(v <= e for v in lin.c):
        raise ValueError("perturbation too large: some c_i would become nonpositive")
    return Linearization(lin.gamma + e, [v - e for v in lin.c])
