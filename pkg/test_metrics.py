#!/usr/bin/env python3
"""
Tests for Cu-paths, d_G, d_Λ, the Lsc neighbourhood metric and the
bridges between metric closeness and finite-set comparison.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.core import FiniteSubset, IdentityMorphism, compare_on, compose
from src.hom import ElementaryMorphism, PLInducedMorphism, ScalingMorphism, pl_identity, shift_sequence
from src.instances import INF, Elementary, ExtNat, ball, chain_generator, make_cu_z, make_soft_ray, soft
from src.limit import MorphismSequence
from src.metrics import (
    AffinePath,
    BallPath,
    StepPath,
    ball_family,
    bridge_eps_for_set,
    bridge_set_for_eps,
    counterexample_family,
    cu_z_family,
    d_G,
    d_Lambda,
    d_lambda_cauchy_limit,
    discriminating_path,
    distance_profile,
    lambda_fin_equivalence,
    lambda_path,
    lsc_metric,
    path_from_chain,
    soft_ray_family,
    squeeze_certificates,
    uniform_basis_family,
)
from src.pl import PLMap, grid_family_set, pl_sup_distance
from src.utils.errors import PreconditionError, RepresentationError, StructuralError

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@st.composite
def nbar_step_paths(draw):
    """Step paths into N̄ with finite values and breaks on the 1/8 grid."""
    values = sorted(draw(st.lists(st.integers(1, 5), min_size=1, max_size=3)), reverse=True)
    ends = sorted(draw(st.sets(st.integers(1, 8), min_size=len(values), max_size=len(values))))
    return StepPath(ExtNat(), [0] + [Fraction(e, 8) for e in ends], values)


# ===== Paths =====

def test_step_path_validation():
    N = ExtNat()
    with pytest.raises(PreconditionError):
        StepPath(N, [0, HALF, 1], [1, 2])
    with pytest.raises(RepresentationError):
        StepPath(N, [HALF, 1], [1])
    with pytest.raises(RepresentationError):
        StepPath(N, [0, 1], [INF])
    merged = StepPath(N, [0, HALF, 1], [2, 2])
    assert merged.breaks == (0, 1)
    assert merged(0) == 2 and merged(1) == 0


def test_paths_from_compact_chains_are_steps():
    tau = path_from_chain(ExtNat(), [1, 2, 3])
    assert isinstance(tau, StepPath)
    assert tau.breaks == (0, HALF, 1)
    assert [tau(0), tau(HALF), tau(1)] == [3, 2, 0]
    with pytest.raises(PreconditionError):
        path_from_chain(ExtNat(), [2, 1])


def test_paths_from_chains_in_g_are_affine(gen):
    tau = path_from_chain(gen, [chain_generator(HALF), chain_generator(QUARTER)])
    assert isinstance(tau, AffinePath)
    assert tau.size(0) == 1
    assert tau(HALF) == chain_generator(QUARTER)
    assert tau(1) == gen.zero


def test_affine_and_ball_paths_check_their_targets():
    with pytest.raises(StructuralError):
        AffinePath(ExtNat(), PLMap.through([1, 0]))
    with pytest.raises(PreconditionError):
        BallPath(2)
    assert BallPath(HALF)(0) == ball(HALF, 1)


# ===== d_G =====

@settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(nbar_step_paths(), nbar_step_paths(), nbar_step_paths())
def test_d_g_is_a_pseudometric_on_step_paths(u, v, w):
    assert d_G(u, u) == 0
    assert d_G(u, v) == d_G(v, u)
    assert 0 <= d_G(u, v) <= 1
    assert d_G(u, w) <= d_G(u, v) + d_G(v, w)


@settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(nbar_step_paths(), nbar_step_paths())
def test_composition_is_a_contraction(u, v):
    doubling = ScalingMorphism(ExtNat(), 2)
    assert d_G(u.push(doubling), v.push(doubling)) <= d_G(u, v)


def test_constant_paths_at_different_heights_are_far_apart():
    N = ExtNat()
    assert d_G(StepPath(N, [0, 1], [3]), StepPath(N, [0, 1], [2])) == 1
    assert d_G(StepPath(N, [0, HALF], [2]), StepPath(N, [0, QUARTER], [2])) == QUARTER


def test_shifted_lambda_paths_stay_half_apart(gen):
    for n in range(2, 65):
        lam = lambda_path(gen, n)
        assert d_G(lam.push(shift_sequence(gen, n)), lam) == HALF


def test_mixed_path_kinds_have_no_exact_distance(gen, soft_ray):
    with pytest.raises(RepresentationError):
        d_G(StepPath(soft_ray, [0, 1], [soft_ray.zero]), soft_ray_family().paths[0])
    with pytest.raises(StructuralError):
        d_G(lambda_path(gen, 2), soft_ray_family().paths[0])


# ===== d_Λ =====

def test_shifts_do_not_converge_in_the_lambda_metric(gen):
    identity = IdentityMorphism(gen)
    F = FiniteSubset.of(gen, gen.basis(1))
    for n in range(2, 65):
        shift = shift_sequence(gen, n)
        assert d_Lambda(shift, identity, counterexample_family(n)) == HALF
        assert compare_on(shift, identity, F)


def test_cu_z_profile():
    S = make_cu_z()
    profile = distance_profile(IdentityMorphism(S), ScalingMorphism(S, Fraction(2)), cu_z_family())
    assert profile == [HALF, 1]
    assert d_Lambda(IdentityMorphism(S), ScalingMorphism(S, Fraction(2)), cu_z_family()) == 1


def test_soft_ray_scalings():
    S = make_soft_ray()
    family = soft_ray_family()
    assert d_Lambda(ScalingMorphism(S, Fraction(1)), ScalingMorphism(S, Fraction(2)), family) == HALF
    assert d_Lambda(ScalingMorphism(S, Fraction(2)), ScalingMorphism(S, Fraction(3)), family) == Fraction(1, 3)
    tripled = [compose(ScalingMorphism(S, Fraction(3)), ScalingMorphism(S, Fraction(k))) for k in (1, 2)]
    assert d_Lambda(tripled[0], tripled[1], family) <= HALF


positive_factors = st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)


@settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(positive_factors, positive_factors, positive_factors)
def test_d_lambda_is_a_metric_on_soft_ray_scalings(a, b, c):
    S = make_soft_ray()
    family = soft_ray_family()
    scale = {x: ScalingMorphism(S, x) for x in (a, b, c)}
    d = lambda x, y: d_Lambda(scale[x], scale[y], family)
    assert d(a, a) == 0
    assert (d(a, b) == 0) == (a == b)
    assert d(a, b) == d(b, a)
    assert 0 <= d(a, b) <= 1
    assert d(a, c) <= d(a, b) + d(b, c)


def test_elementary_distances_are_zero_or_one():
    family = uniform_basis_family(Elementary(1), 0)
    alpha, beta = ElementaryMorphism(1, 3, 2), ElementaryMorphism(1, 3, INF)
    assert d_Lambda(alpha, alpha, family) == 0
    assert d_Lambda(alpha, beta, family) == 1


def test_family_must_match_the_domain(gen, soft_ray):
    with pytest.raises(StructuralError):
        d_Lambda(IdentityMorphism(gen), IdentityMorphism(gen), soft_ray_family())


# ===== Lsc neighbourhood metric =====

def test_lsc_metric_matches_sup_distance():
    h = PLMap.from_points([(0, 0), (QUARTER, 0), (1, 1)])
    alpha = PLInducedMorphism(h)
    assert lsc_metric(alpha, pl_identity()) == QUARTER
    assert lsc_metric(alpha, pl_identity(), 2) == QUARTER
    assert d_Lambda(alpha, pl_identity(), ball_family()) == QUARTER
    assert lsc_metric(pl_identity(), pl_identity(), 2) == 0


def test_lsc_metric_needs_interval_domains(nbar):
    with pytest.raises(StructuralError):
        lsc_metric(IdentityMorphism(nbar), IdentityMorphism(nbar))


# ===== Bridges =====

def test_bridge_eps_for_compact_chains():
    E = Elementary(2)
    F = FiniteSubset.of(E, E.basis(0))
    family = uniform_basis_family(E, 0)
    assert bridge_eps_for_set(F, family) == Fraction(15, 16)
    assert len(squeeze_certificates(F, family)) == len(F.ll_pairs)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_grid_comparison_and_sup_distance_bridge_both_ways(n):
    rng = random.Random(n)
    F = grid_family_set(n)
    step = Fraction(1, 2 * n)
    for _ in range(50):
        inner = [Fraction(rng.randint(0, 2 * n), 2 * n) for _ in range(rng.randint(0, 4))]
        near = [min(max(v + rng.randint(-2, 2) * step, 0), 1) for v in inner]
        far = [Fraction(rng.randint(0, 2 * n), 2 * n) for _ in inner]
        h = PLMap.through([0] + inner + [1])
        alpha = PLInducedMorphism(h)
        h_near = PLMap.through([0] + near + [1])
        assert pl_sup_distance(h, h_near) <= Fraction(1, n)
        assert compare_on(alpha, PLInducedMorphism(h_near), F)
        for other in (h_near, PLMap.through([0] + far + [1])):
            beta = PLInducedMorphism(other)
            if compare_on(alpha, beta, F):
                assert lsc_metric(alpha, beta) <= Fraction(2, n)


def test_bridge_set_for_eps():
    family = soft_ray_family()
    F = bridge_set_for_eps(HALF, family)
    assert F.host == family.target
    assert soft(1) in F
    with pytest.raises(PreconditionError):
        bridge_set_for_eps(0, family)
    with pytest.raises(StructuralError):
        squeeze_certificates(FiniteSubset.of(ExtNat(), [0, 1]), family)


def test_discriminating_path_separates_maps():
    alpha, beta = ElementaryMorphism(1, 2, 2), ElementaryMorphism(1, 2, INF)
    F = FiniteSubset.of(Elementary(1), Elementary(1).basis(0))
    tau = discriminating_path(alpha, beta, F, HALF)
    assert d_G(tau.push(alpha), tau.push(beta)) == 1
    assert discriminating_path(alpha, alpha, F, HALF) is None
    with pytest.raises(PreconditionError):
        discriminating_path(alpha, beta, F, 1)


# ===== Convergence =====

def test_metric_limit_of_soft_scalings(soft_ray):
    seq = MorphismSequence(
        soft_ray, soft_ray,
        lambda i: ScalingMorphism(soft_ray, 1 + Fraction(1, 2 ** i)),
        horizon=12, label="soft geometric",
    )
    result = d_lambda_cauchy_limit(seq, soft_ray_family(), 1, closed_form=IdentityMorphism(soft_ray))
    assert result.steps[0] == QUARTER
    assert result.tails[0] == sum(result.steps)
    assert result.converges_in_metric is True
    assert result.limit(soft(HALF)) == soft(HALF)
    assert result.to_dict()["converges_in_metric"] is True


def test_pointwise_and_uniform_readings(gen):
    report = lambda_fin_equivalence([shift_sequence(gen, 4)], IdentityMorphism(gen), counterexample_family(4))
    assert report.per_path["λ_4"] == [HALF]
    assert report.pointwise_last() == HALF
    assert report.sup == [HALF]
    with pytest.raises(PreconditionError):
        lambda_fin_equivalence([], IdentityMorphism(gen), counterexample_family(1))
