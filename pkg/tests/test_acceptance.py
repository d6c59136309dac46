"""Acceptance criteria, one test each; the summary prints a PASS/FAIL line per
criterion (see conftest)."""

import random
import time
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb

import pytest

from conicgit.geometry import PointedConic, ProjPoint, parametrize_conic, veronese
from conicgit.hilbert_mumford import (
    B_MAX,
    B_MIN,
    OnePSFrame,
    monomial_weight_order_check,
    mu_of_frame,
)
from conicgit.moduli import (
    ChainCurve,
    FCurvePartition,
    NodalImage,
    canonical_form,
    chain,
    fcurve_contracted,
    fcurve_member,
    reduce,
    semistable_reduction_pipeline,
)
from conicgit.polytope import Regime, delta3_faces, delta3_vertex_count, normalize, walls_at
from conicgit.sampling import (
    LINE_PAIR,
    random_chamber_linearization,
    random_dm_tree,
    random_double_line,
    random_gl3,
    random_linearization_any,
    random_nodal,
    random_nonsingular,
    random_scale,
    random_weights,
)
from conicgit.selftest import run_sweep
from conicgit.stability import boggi2_linearization, classify_sl2, classify_theorem1, is_I_stable
from conicgit.weights import Linearization, Verdict

from acceptance_log import note
from enumerate import collision_patterns
from oracles import segre_mu

F = Fraction
SIX = [F(5, 8)] * 4 + [F(2, 8), F(1, 8)]

# Each criterion's workload is computed once and returns (verdict, linearization)
# records, so the wall criterion can audit everything the others produced.


@lru_cache(maxsize=None)
def sweep_records():
    start = time.perf_counter()
    res = run_sweep(500, seed=0)
    return res, time.perf_counter() - start


@lru_cache(maxsize=None)
def edge_claim_records():
    rng = random.Random(2)
    doubles, nodals = [], []
    for _ in range(200):
        n = rng.randint(1, 6)
        cfg = random_double_line(rng, n).transform(random_gl3(rng))
        lin = random_linearization_any(rng, n)
        doubles.append((classify_theorem1(cfg, lin), lin))
    for _ in range(200):
        n = rng.randint(2, 6)
        cfg = random_nodal(rng, n).transform(random_gl3(rng))
        c = random_weights(rng, n, F(2))
        gamma = 1 + F(rng.randint(1, 40), rng.randint(1, 12))
        lin = Linearization(gamma, c).scaled(random_scale(rng))
        nodals.append((classify_theorem1(cfg, lin), lin))
    return doubles, nodals


@lru_cache(maxsize=None)
def sl2_records():
    rng = random.Random(3)
    out = []
    for _ in range(200):
        n = rng.randint(1, 6)
        cfg = random_nonsingular(rng, n, 0.4).transform(random_gl3(rng))
        c = [F(rng.randint(1, 9), 10) for _ in range(n)]
        lin = Linearization(sum(c) / 2 + F(rng.randint(1, 10), 10), c)
        param = parametrize_conic(cfg.form, cfg.points[0])
        out.append((classify_theorem1(cfg, lin), classify_sl2([param.inverse(p) for p in cfg.points], c), lin))
    return out


@lru_cache(maxsize=None)
def boggi_records():
    out = []
    for n in (4, 5):
        lin = boggi2_linearization(n, F(1, 10))
        for cfg in collision_patterns(n):
            out.append((n, classify_theorem1(cfg, lin), is_I_stable(cfg, {1, 2}), lin))
    return out


@lru_cache(maxsize=None)
def tree_records():
    rng = random.Random(6)
    out = []
    for _ in range(300):
        n = rng.randint(3, 8)
        T = random_dm_tree(rng, n)
        lin = random_chamber_linearization(rng, n)
        R = reduce(T, lin.c)
        res = semistable_reduction_pipeline(T, lin.c, lin.gamma)
        out.append((T, R, reduce(R, lin.c), res, lin))
    return out


def _random_partition(rng, n):
    while True:
        lab = [rng.randrange(4) for _ in range(n)]
        if len(set(lab)) == 4:
            return FCurvePartition([[i + 1 for i in range(n) if lab[i] == k] for k in range(4)])


@lru_cache(maxsize=None)
def fcurve_records():
    rng = random.Random(7)
    out = []
    for _ in range(100):
        n = rng.randint(4, 8)
        P = _random_partition(rng, n)
        lin = random_chamber_linearization(rng, n)
        results = [semistable_reduction_pipeline(fcurve_member(P, lam), lin.c, lin.gamma)
                   for lam in (F(-1), F(3, 7))]
        out.append((P, lin, fcurve_contracted(P, lin.c, lin.gamma), results))
    return out


@lru_cache(maxsize=None)
def six_point_result():
    return semistable_reduction_pipeline(chain([[1], [2]], [[5], [6]], [[3], [4]]), SIX, F(1, 8))


def _wall_linearization(rng, n):
    gamma = F(rng.randint(1, 23), 24)
    level = rng.choice((1, 2))
    size = rng.randint(1 if level == 1 else 2, n - 1)
    I = rng.sample(range(n), size)
    part = random_weights(rng, size, F(level), F(1) if level == 1 and size > 1 else None)
    rest = random_weights(rng, n - size, 3 - gamma - level)
    c = [F(0)] * n
    for i, v in zip(I, part):
        c[i] = v
    for i, v in zip([k for k in range(n) if k not in I], rest):
        c[i] = v
    return Linearization(gamma, c), sorted(I)


def _structured_config(rng, n, I):
    """Configurations that put the wall subset where a cap can be met exactly."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_nonsingular(rng, n, 0.3)
    if kind == 1:
        pts = [veronese(0) if i in I else veronese(k + 1) for k, i in enumerate(range(n))]
        return PointedConic(random_nonsingular(rng, 1).form, pts)
    pts = [ProjPoint(0, 1, k + 1) if i in I else ProjPoint(1, 0, k + 1) for k, i in enumerate(range(n))]
    return PointedConic(LINE_PAIR, pts)


@lru_cache(maxsize=None)
def wall_records():
    rng = random.Random(9)
    out = []
    for _ in range(200):
        n = rng.randint(3, 6)
        lin, I = _wall_linearization(rng, n)
        cfg = _structured_config(rng, n, I).transform(random_gl3(rng))
        out.append((classify_theorem1(cfg, lin), lin))
    return out


# ---------------------------------------------------------------------------

@pytest.mark.criterion(1, "classifier and oracle agree on 500 split configurations")
def test_criterion_1_classifier_matches_oracle():
    res, seconds = sweep_records()
    assert len(res.cases) >= 500
    for case in res.cases:
        nl = normalize(case.lin)
        assert 3 <= case.lin.n <= 6
        assert nl.regime is Regime.LOW_GAMMA and 0 < nl.gamma < 1 and not walls_at(nl)
    verdicts = Counter(c.classifier.value for c in res.cases)
    note(1, f"{len(res.cases)} cases, {len(res.mismatches)} mismatches, {seconds:.1f}s, {dict(verdicts)}")
    assert not res.mismatches
    assert seconds < 300


@pytest.mark.criterion(2, "double lines and nodal conics at large gamma are unstable")
def test_criterion_2_edge_claims():
    doubles, nodals = edge_claim_records()
    for _, lin in nodals:
        nl = normalize(lin)
        assert nl.regime is Regime.HIGH_GAMMA and nl.gamma > 1
    bad = sum(v is not Verdict.UNSTABLE for v, _ in doubles + nodals)
    note(2, f"{len(doubles)} double lines, {len(nodals)} nodal, {bad} not unstable")
    assert bad == 0


@pytest.mark.criterion(3, "nonsingular verdicts equal binary-form verdicts when gamma > c/2")
def test_criterion_3_sl2_identification():
    recs = sl2_records()
    bad = sum(a is not b for a, b, _ in recs)
    note(3, f"{len(recs)} configs, {bad} disagreements, {dict(Counter(a.value for a, _, _ in recs))}")
    assert bad == 0


@pytest.mark.criterion(4, "vertex counts 4, 10, 20 and disjoint exhaustive faces")
def test_criterion_4_hypersimplex_counts():
    counts = [delta3_vertex_count(n) for n in (3, 4, 5)]
    note(4, f"counts {counts}")
    assert counts == [4, 10, 20]
    for n in (3, 4, 5):
        low, high = delta3_faces(n)
        assert not set(low) & set(high)
        assert len(set(low) | set(high)) == comb(n + 1, 3)


@pytest.mark.criterion(5, "semistability under the Boggi linearization equals I-stability")
def test_criterion_5_boggi_equivalence():
    recs = boggi_records()
    bad = [(n, v, s) for n, v, s, _ in recs if (v is not Verdict.UNSTABLE) != s]
    sizes = Counter(n for n, *_ in recs)
    note(5, f"patterns n=4: {sizes[4]}, n=5: {sizes[5]}, exceptions {len(bad)}")
    assert not bad


@pytest.mark.criterion(6, "reduction is idempotent, gives chains, and the image is stable")
def test_criterion_6_reduction_transfer():
    recs = tree_records()
    for T, R, RR, res, _ in recs:
        assert RR == R
        assert R.is_chain() and isinstance(res.chain, ChainCurve)
        assert res.verdict is Verdict.STABLE, (T, res)
    note(6, f"{len(recs)} trees, shapes {len({r[0].shape() for r in recs})}")


@pytest.mark.criterion(7, "F-curve contraction matches the pipeline's canonical forms")
def test_criterion_7_fcurve_contraction():
    recs = fcurve_records()
    bad = [(P, lin) for P, lin, pred, rs in recs
           if (canonical_form(rs[0].image) == canonical_form(rs[1].image)) is not pred]
    worked = [fcurve_contracted(FCurvePartition(p), SIX, F(1, 8))
              for p in ([[6], [5], [1], [2, 3, 4]], [[1], [2], [3], [4, 5, 6]], [[5], [6], [1, 2], [3, 4]])]
    note(7, f"{len(recs)} triples, {len(bad)} disagreements, worked {worked}")
    assert not bad
    assert worked == [True, False, True]


@pytest.mark.criterion(8, "six-point chain maps to a stable nodal conic with node marks {5,6}")
def test_criterion_8_six_point_pipeline():
    res = six_point_result()
    note(8, f"{type(res.image).__name__}, node {sorted(res.image.node)}, {res.verdict.value}")
    assert isinstance(res.image, NodalImage)
    assert res.image.node == frozenset({5, 6})
    assert res.verdict is Verdict.STABLE


@pytest.mark.criterion(9, "strict semistability happens only on walls")
def test_criterion_9_walls_and_strictness():
    res, _ = sweep_records()
    doubles, nodals = edge_claim_records()
    recs = [(c.classifier, c.lin) for c in res.cases] + [(c.oracle, c.lin) for c in res.cases]
    recs += doubles + nodals
    recs += [(a, lin) for a, _, lin in sl2_records()] + [(b, lin) for _, b, lin in sl2_records()]
    recs += [(v, lin) for _, v, _, lin in boggi_records()]
    recs += [(r.verdict, lin) for *_, r, lin in tree_records()]
    recs += [(r.verdict, lin) for _, lin, _, rs in fcurve_records() for r in rs]
    recs.append((six_point_result().verdict, Linearization(F(1, 8), SIX)))
    directed = wall_records()
    recs += directed
    strict = [lin for v, lin in recs if v is Verdict.STRICTLY_SEMISTABLE]
    off_wall = [lin for lin in strict if not walls_at(normalize(lin))]
    from_sweep = sum(v is Verdict.STRICTLY_SEMISTABLE for v, _ in directed)
    note(9, f"{len(recs)} verdicts, {len(strict)} strictly semistable "
            f"({from_sweep} from the wall sweep), {len(off_wall)} off-wall")
    assert from_sweep > 0
    assert not off_wall


@pytest.mark.criterion(10, "weight chains hold and separable mu equals the Segre minimum")
def test_criterion_10_mu_machinery():
    rng = random.Random(10)
    for lo, hi in ((B_MIN, F(-1)), (F(-1), B_MAX)):
        for _ in range(50):
            b = lo + (hi - lo) * F(rng.randint(0, 1000), 1000)
            assert monomial_weight_order_check(b)[1], b
    checked = 0
    for n in (1, 2, 3):
        for maker in (random_nonsingular, random_nodal, random_double_line):
            cfg = maker(rng, n).transform(random_gl3(rng))
            lin = random_linearization_any(rng, n)
            for _ in range(50):
                g = random_gl3(rng)
                prof = mu_of_frame(cfg, lin, OnePSFrame.from_columns(g))
                for b in set(prof.breakpoints) | {B_MIN, F(-3, 2), F(-1), F(-3, 4), B_MAX}:
                    assert prof(b) == segre_mu(cfg.form.coefficients, [p.coords for p in cfg.points],
                                               lin.gamma, lin.c, g, b)
                    checked += 1
    note(10, f"100 sampled b, {checked} Segre comparisons")
