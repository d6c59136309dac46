"""Randomized agreement sweep between the closed-form classifier and the oracle."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .geometry import PointedConic
from .hilbert_mumford import oracle_search
from .sampling import (
    random_chamber_linearization,
    random_gl3,
    random_nodal,
    random_nonsingular,
    random_scale,
)
from .stability import classify_theorem1
from .weights import Linearization, Verdict


@dataclass
class Case:
    config: PointedConic
    lin: Linearization
    classifier: Verdict
    oracle: Verdict

    @property
    def agrees(self) -> bool:
        return self.classifier is self.oracle


@dataclass
class SweepResult:
    cases: list[Case] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Case]:
        return [c for c in self.cases if not c.agrees]

    def tally(self) -> Counter:
        return Counter((c.config.conic_class.__class__.__name__, c.classifier.value) for c in self.cases)


def sample_case(rng: random.Random, n_range=(3, 6), stable_bias: float = 0.5,
                retries: int = 25) -> tuple[PointedConic, Linearization]:
    """A split configuration in general coordinates with a chamber-interior
    linearization; with probability ``stable_bias`` the draw retries for a
    stable pair so both verdicts get exercised."""
    n = rng.randint(*n_range)
    if rng.random() < 0.5:
        cfg = random_nonsingular(rng, n, 0.2)
    else:
        cfg = random_nodal(rng, n, 0.2, 0.12)
    cfg = cfg.transform(random_gl3(rng))
    want_stable = rng.random() < stable_bias
    for _ in range(retries):
        lin = random_chamber_linearization(rng, n)
        if not want_stable or classify_theorem1(cfg, lin) is Verdict.STABLE:
            break
    return cfg, lin.scaled(random_scale(rng))


def run_sweep(cases: int, seed: int = 0) -> SweepResult:
    rng = random.Random(seed)
    out = SweepResult()
    for _ in range(cases):
        cfg, lin = sample_case(rng)
        out.cases.append(Case(cfg, lin, classify_theorem1(cfg, lin), oracle_search(cfg, lin).verdict))
    return out
