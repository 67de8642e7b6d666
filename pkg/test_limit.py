#!/usr/bin/env python3
"""
Tests for Cauchy sequences of morphisms, their limits, formal colimits and
the maps induced by approximate intertwinings.
"""

import random
from fractions import Fraction

import pytest

from src.core import FiniteSubset, FunctionMorphism, IdentityMorphism, Reindexed
from src.hom import ElementaryMorphism, FromExtNat, ScalingMorphism, ShiftMorphism, shift_sequence
from src.instances import INF, Elementary, ExtNat, Simplicial, chain_generator, compact, make_softdim, soft
from src.limit import (
    Intertwining,
    LimitMorphism,
    MorphismSequence,
    Verdict,
    cauchy_limit,
    colimit_leq,
    colimit_make,
    convergence_certificate,
    identify_colimit,
    one_sided_induced,
    two_sided_induced,
)
from src.utils.errors import DiagnosticError, PreconditionError, StructuralError


def _shifts(gen, horizon=16):
    return MorphismSequence(gen, gen, lambda i: shift_sequence(gen, i + 1), horizon=horizon, label="shifts")


def _doubling_colimit(length):
    N = ExtNat()
    return colimit_make([N] * length, [ScalingMorphism(N, 2)] * (length - 1), "doubling")


def _quadrupling_colimit(length):
    N = ExtNat()
    return colimit_make([N] * length, [ScalingMorphism(N, 4)] * (length - 1), "quadrupling")


def _dyadic_stage_maps(S, base):
    return lambda i: FromExtNat(S, compact(Fraction(1, base ** i)))


# ===== Sequences =====

def test_sequence_validation(gen):
    with pytest.raises(PreconditionError):
        MorphismSequence(gen, gen, lambda i: IdentityMorphism(gen), horizon=0)
    with pytest.raises(PreconditionError):
        MorphismSequence.from_terms([])
    wrong = MorphismSequence(gen, gen, lambda i: IdentityMorphism(ExtNat()))
    with pytest.raises(StructuralError):
        wrong.term(0)


def test_shift_sequence_is_cauchy(gen):
    seq = _shifts(gen)
    F = FiniteSubset.of(gen, gen.basis(1))
    index = seq.modulus_for(F)
    assert 0 <= index < seq.horizon
    assert seq.terms(0, 2)[1].amount == Fraction(1, 2)


def test_alternating_sequence_is_not_cauchy():
    a, b = ElementaryMorphism(1, 2, 2), ElementaryMorphism(1, 2, INF)
    seq = MorphismSequence(a.domain, a.codomain, lambda i: a if i % 2 else b, horizon=8, label="alternating")
    with pytest.raises(DiagnosticError):
        seq.modulus_for(FiniteSubset.of(a.domain, a.domain.basis(0)))
    with pytest.raises(DiagnosticError):
        cauchy_limit(seq, 0)


def test_supplied_modulus_is_spot_checked():
    a, b = ElementaryMorphism(1, 2, 2), ElementaryMorphism(1, 2, INF)
    seq = MorphismSequence(a.domain, a.codomain, lambda i: a if i % 2 else b, modulus=lambda F: 0, horizon=8)
    with pytest.raises(DiagnosticError):
        seq.modulus_for(FiniteSubset.of(a.domain, [0, 1]))


# ===== Limits =====

def test_shifts_converge_to_the_identity(gen):
    limit = cauchy_limit(_shifts(gen), 1, closed_form=IdentityMorphism(gen))
    assert limit.phi == sorted(limit.phi)
    assert len(limit.phi) == 2
    for x in gen.basis(1):
        assert limit(x) == x
    assert limit.exact


def test_wrong_closed_form_is_rejected(gen):
    with pytest.raises(DiagnosticError):
        cauchy_limit(_shifts(gen), 1, closed_form=ShiftMorphism(gen, 1))


def test_convergence_certificate_reports_an_index(gen):
    seq = _shifts(gen)
    certificate = convergence_certificate(seq, IdentityMorphism(gen), FiniteSubset.of(gen, gen.basis(1)))
    assert certificate.passed
    assert certificate.index is not None and certificate.index <= seq.horizon
    assert certificate.to_dict()["passed"] is True


def test_eventually_constant_sequence_has_an_exact_limit():
    early, late = ElementaryMorphism(1, 2, INF), ElementaryMorphism(1, 2, 2)
    seq = MorphismSequence.from_terms([early, late, late, late], label="settling")
    limit = cauchy_limit(seq, 0)
    assert limit.phi == [1]
    assert limit(1) == 2
    assert limit(INF) == INF
    assert limit.exact
    assert limit.chain_independent(1)


def test_limit_presentation_must_share_the_carrier(gen):
    with pytest.raises(StructuralError):
        cauchy_limit(_shifts(gen), 1, basis=ExtNat())
    with pytest.raises(PreconditionError):
        cauchy_limit(_shifts(gen), -1)


@pytest.mark.parametrize("seed", range(20))
def test_limit_does_not_depend_on_the_basis_enumeration(seed):
    rng = random.Random(seed)
    N = ExtNat()
    factors = [rng.choice([1, 2, 3, 5]) for _ in range(rng.randint(0, 4))]
    final = rng.choice([1, 2, 3, 5])
    seq = MorphismSequence.from_terms([ScalingMorphism(N, k) for k in factors + [final, final]], label=f"settling {seed}")
    limits = [cauchy_limit(seq, 3), cauchy_limit(seq, 3, basis=Reindexed(N, stride=2, offset=1))]
    for x in N.basis(3):
        assert [limit(x) for limit in limits] == [ScalingMorphism(N, final).apply(x)] * 2
        assert all(limit.chain_independent(x) for limit in limits)


def test_incomparable_chain_images_are_an_error():
    N, R = ExtNat(), Simplicial(2)
    scatter = FunctionMorphism(N, R, lambda x: (1, 0) if x == 1 else (0, 1) if x == 2 else (x, x), "scatter")
    seq = MorphismSequence(N, R, lambda i: scatter, horizon=4, label="scatter")
    limit = LimitMorphism(seq, 2, [0, 0, 0], N)
    with pytest.raises(DiagnosticError) as info:
        limit.evaluate_with_chain([1, 2])
    assert info.value.detail["chain"] == [1, 2]
    assert info.value.detail["pair"] == [[1, 0], [0, 1]]
    assert limit.evaluate_with_chain([0, 1]) == (1, 0)


def test_soft_scalings_converge_to_the_identity(soft_ray):
    seq = MorphismSequence(
        soft_ray, soft_ray,
        lambda i: ScalingMorphism(soft_ray, 1 + Fraction(1, 2 ** i)),
        horizon=8, label="soft geometric",
    )
    limit = cauchy_limit(seq, 1, closed_form=IdentityMorphism(soft_ray))
    assert limit(soft(Fraction(1, 2))) == soft(Fraction(1, 2))


# ===== Formal colimits =====

def test_connecting_maps_compose_in_closed_form():
    C = _doubling_colimit(4)
    assert C.connecting(0, 2).factor == 4
    assert C.push((1, 3), 3) == 12
    assert C.subsequence([0, 2, 3]).connecting(0, 1).factor == 4
    with pytest.raises(PreconditionError):
        C.connecting(2, 1)
    with pytest.raises(StructuralError):
        colimit_make([ExtNat(), ExtNat()], [])


def test_colimit_order_is_three_valued():
    C = _doubling_colimit(4)
    assert colimit_leq(C, (1, 2), (0, 1)) == Verdict.YES
    assert colimit_leq(C, (0, 1), (1, 1)) == Verdict.UNKNOWN
    S = make_softdim(2)
    report = identify_colimit(C, S, _dyadic_stage_maps(S, 2), 1)
    assert report.passed
    assert report.checked > 0
    assert colimit_leq(C, (0, 1), (1, 1)) == Verdict.NO
    assert colimit_leq(C, (1, 2), (0, 1)) == Verdict.YES


def test_identification_rejects_non_commuting_stage_maps():
    C = _doubling_colimit(3)
    S = make_softdim(2)
    with pytest.raises(PreconditionError):
        identify_colimit(C, S, lambda i: FromExtNat(S, compact(1)), 1)


def test_identification_checks_stage_map_shapes():
    E = [Elementary(1), Elementary(3), Elementary(7)]
    maps = [ElementaryMorphism(1, 3, 2), ElementaryMorphism(3, 7, 2)]
    C = colimit_make(E, maps, "doubling E")
    N = ExtNat()
    with pytest.raises(StructuralError):
        identify_colimit(C, N, lambda i: FromExtNat(N, 1), 0)


# ===== Intertwinings =====

def test_intertwining_validation():
    S, T = _doubling_colimit(3), _quadrupling_colimit(3)
    N = ExtNat()
    alphas = [ScalingMorphism(N, 2 ** i) for i in range(3)]
    with pytest.raises(PreconditionError):
        Intertwining(S, T, alphas, [0, 0, 1])
    with pytest.raises(StructuralError):
        Intertwining(S, T, alphas[:2], [0, 1, 2])
    with pytest.raises(StructuralError):
        Intertwining(S, T, [ElementaryMorphism(1, 2, 2)] * 3, [0, 1, 2])


def test_one_sided_intertwining_induces_a_map():
    S, T = _doubling_colimit(4), _quadrupling_colimit(4)
    N = ExtNat()
    I = Intertwining(S, T, [ScalingMorphism(N, 2 ** i) for i in range(4)], [0, 1, 2, 3], label="halving")
    alpha = one_sided_induced(I, 1)
    assert alpha.represent((1, 1)) == (1, 2)
    assert all(c.passed for c in I.ledger)
    target = make_softdim(2)
    assert identify_colimit(T, target, _dyadic_stage_maps(target, 4), 1).passed
    assert alpha.value((1, 1)) == compact(Fraction(1, 2))
    assert alpha.value((0, INF)) == soft(INF)


def test_two_sided_intertwining_induces_inverse_maps():
    S, T = _doubling_colimit(7), _quadrupling_colimit(4)
    N = ExtNat()
    I = Intertwining(
        S, T,
        [ScalingMorphism(N, 2 ** i) for i in range(4)], [0, 1, 2, 3],
        [ScalingMorphism(N, 1) for _ in range(4)], [0, 2, 4, 6],
        label="dyadic",
    )
    pair = two_sided_induced(I, 1)
    assert pair.stages_source == [0, 1]
    assert pair.stages_target == [0, 1]
    assert pair.to_dict()["ledger"]
    assert set(pair.to_dict()["out_of_room"]) == {"source", "target"}


def test_round_trip_gap_past_the_first_stage_is_an_error():
    S, T = _doubling_colimit(7), _quadrupling_colimit(4)
    N = ExtNat()
    # wrong only at 32, which stage 0 never sends through β_3 but stage 1 does
    glitch = FunctionMorphism(N, N, lambda x: 33 if x == 32 else x, "glitch")
    I = Intertwining(
        S, T,
        [ScalingMorphism(N, 2 ** i) for i in range(4)], [0, 1, 2, 3],
        [ScalingMorphism(N, 1) for _ in range(3)] + [glitch], [0, 2, 4, 6],
        label="glitched",
    )
    with pytest.raises(DiagnosticError) as info:
        two_sided_induced(I, 1)
    certificate = info.value.detail["certificate"]
    assert certificate["stage"] == 1
    assert certificate["index"] is None
    assert (certificate["failure"]["j"], certificate["failure"]["k"]) == (3, 3)
    assert [c.passed for c in I.ledger[:1]] == [True]


def test_two_sided_needs_backward_maps():
    S, T = _doubling_colimit(3), _quadrupling_colimit(3)
    N = ExtNat()
    I = Intertwining(S, T, [ScalingMorphism(N, 2 ** i) for i in range(3)], [0, 1, 2])
    with pytest.raises(PreconditionError):
        two_sided_induced(I, 1)
    with pytest.raises(PreconditionError):
        I.reversed()


def test_shift_images_move_chain_generators(gen):
    assert shift_sequence(gen, 2)(chain_generator(0)) == chain_generator(Fraction(1, 2))
