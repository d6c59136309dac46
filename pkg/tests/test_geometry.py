import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conicgit.geometry import (
    ConicForm,
    DoubleLine,
    Nodal,
    NonSingular,
    P1Point,
    PointedConic,
    ProjPoint,
    as_fraction,
    classify_conic,
    incident,
    mobius_normal_form,
    parametrize_conic,
    same_component,
    veronese,
)
from conicgit.sampling import VERONESE, random_gl3, random_nodal, random_rational

rationals = st.builds(Fraction, st.integers(-60, 60), st.integers(1, 20))
nonzero = st.builds(Fraction, st.integers(1, 60), st.integers(1, 20)) | \
    st.builds(Fraction, st.integers(-60, -1), st.integers(1, 20))


def test_as_fraction_accepts_exact_forms():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(-2) == -2
    assert as_fraction(" -7/21 ") == Fraction(-1, 3)


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", True, "x", "1/0"])
def test_as_fraction_rejects_inexact_or_malformed(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        as_fraction(bad)


@given(st.tuples(rationals, rationals, rationals).filter(any), nonzero)
def test_point_canonical_under_scaling(coords, lam):
    p, q = ProjPoint(*coords), ProjPoint(*(lam * v for v in coords))
    assert p == q and p.coords == q.coords
    first = next(v for v in p.coords if v)
    assert first > 0


@given(st.lists(rationals, min_size=6, max_size=6).filter(any), nonzero)
def test_conic_canonical_under_scaling(coeffs, lam):
    assert ConicForm(*coeffs) == ConicForm(*(lam * v for v in coeffs))


def test_zero_vectors_rejected():
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)
    with pytest.raises(ValueError):
        ConicForm(0, 0, 0, 0, 0, 0)


def test_classification_examples():
    xy = classify_conic(ConicForm(0, 1, 0, 0, 0, 0))
    assert isinstance(xy, Nodal) and xy.node == ProjPoint(0, 0, 1)
    assert isinstance(classify_conic(ConicForm(1, 0, 0, 0, 0, 0)), DoubleLine)
    assert isinstance(classify_conic(VERONESE), NonSingular)


def test_irrational_components_still_nodal():
    cls = classify_conic(ConicForm(1, 0, 0, 1, 0, 0))   # x^2 + y^2
    assert isinstance(cls, Nodal) and cls.node == ProjPoint(0, 0, 1)


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6).filter(any))
def test_rank_and_node_incidence(coeffs):
    form = ConicForm(*coeffs)
    assert form.rank in (1, 2, 3)
    cls = classify_conic(form)
    if isinstance(cls, Nodal):
        assert incident(form, cls.node)


def test_incidence_examples():
    xy = ConicForm(0, 1, 0, 0, 0, 0)
    assert incident(xy, ProjPoint(1, 0, 0))
    assert not incident(xy, ProjPoint(1, 1, 1))


@given(rationals)
def test_veronese_points_lie_on_conic(t):
    assert incident(VERONESE, veronese(t))


def test_same_component_examples():
    node = ProjPoint(0, 0, 1)
    assert same_component(node, ProjPoint(0, 1, 0), ProjPoint(0, 1, 1))
    assert not same_component(node, ProjPoint(0, 1, 0), ProjPoint(1, 0, 1))
    assert same_component(node, ProjPoint(1, 0, 0), ProjPoint(1, 0, 0))
    with pytest.raises(ValueError):
        same_component(node, node, ProjPoint(1, 0, 0))


@pytest.mark.parametrize("seed", range(20))
def test_same_component_is_an_equivalence_with_two_classes(seed):
    rng = random.Random(seed)
    cfg = random_nodal(rng, 7, collide=0.2, node_prob=0.0).transform(random_gl3(rng))
    node = cfg.conic_class.node
    pts = [p for p in cfg.locations() if p != node]
    rel = {(p, q): same_component(node, p, q) for p in pts for q in pts}
    for p in pts:
        assert rel[p, p]
        for q in pts:
            assert rel[p, q] == rel[q, p]
            for r in pts:
                if rel[p, q] and rel[q, r]:
                    assert rel[p, r]
    classes = {frozenset(q for q in pts if rel[p, q]) for p in pts}
    assert len(classes) <= 2


def test_veronese_parametrization_examples():
    param = parametrize_conic(VERONESE, ProjPoint(1, 0, 0))
    assert param(P1Point(2)) == ProjPoint(1, 2, 4)
    assert param.inverse(ProjPoint(1, 2, 4)) == P1Point(2)
    assert param(param.inverse(ProjPoint(1, 0, 0))) == ProjPoint(1, 0, 0)


@pytest.mark.parametrize("seed", range(5))
def test_parametrization_round_trip_in_general_coordinates(seed):
    rng = random.Random(seed)
    g = random_gl3(rng)
    cfg = PointedConic(VERONESE, [veronese(0)]).transform(g)
    param = parametrize_conic(cfg.form, cfg.points[0])
    for _ in range(20):
        t = P1Point(random_rational(rng, 20))
        p = param(t)
        assert incident(cfg.form, p)
        assert param.inverse(p) == t
    assert param.inverse(param(P1Point(None))) == P1Point(None)


def test_parametrization_preconditions():
    with pytest.raises(ValueError):
        parametrize_conic(ConicForm(0, 1, 0, 0, 0, 0), ProjPoint(1, 0, 0))
    with pytest.raises(ValueError):
        parametrize_conic(VERONESE, ProjPoint(1, 1, 2))


def test_pointed_conic_rejects_non_incident_points():
    with pytest.raises(ValueError, match="marked point 2"):
        PointedConic(VERONESE, [veronese(1), ProjPoint(1, 1, 2)])


def test_transform_preserves_incidence_and_locations():
    rng = random.Random(3)
    cfg = PointedConic(VERONESE, [veronese(0), veronese(0), veronese(5)])
    moved = cfg.transform(random_gl3(rng))
    assert sorted(moved.locations().values()) == [(1, 2), (3,)]
    with pytest.raises(ValueError):
        cfg.transform(((1, 0, 0), (0, 1, 0), (0, 0, 0)))


@given(st.lists(rationals, min_size=5, max_size=5, unique=True), rationals, nonzero)
def test_mobius_normal_form_invariant_under_affine_maps(vals, shift, scale):
    pts = [P1Point(v) for v in vals]
    moved = [P1Point(scale * v + shift) for v in vals]
    assert mobius_normal_form(pts[0], pts[1], pts[2], pts[3:]) == \
        mobius_normal_form(moved[0], moved[1], moved[2], moved[3:])
