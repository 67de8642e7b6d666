#!/usr/bin/env python3
"""
Tests for morphism families: elementary maps, scalings, shifts, matrices
and maps induced by PL surjections.
"""

from fractions import Fraction

import pytest

from src.core import IdentityMorphism, compose
from src.hom import (
    DirectSumTransform,
    ElementaryMorphism,
    FromExtNat,
    HomKind,
    MatrixMorphism,
    PLInducedMorphism,
    ScalingMorphism,
    ShiftMorphism,
    brute_force_classify,
    corrected_retraction,
    elementary_enumerate,
    elementary_hom_classify,
    en_category_embedding,
    is_order_embedding_on,
    lsc_dual_map,
    matrix_from_function,
    morphism_from_descriptor,
    morphism_laws_check,
    pl_identity,
    retraction_of,
    saturation_map,
    shift_sequence,
    simplicial_hom,
    simplicial_is_embedding,
    simplicial_is_retractable,
    simplicial_maps_one_to_one,
)
from src.instances import INF, Elementary, chain_generator, compact, interval_indicator, make_softdim, soft, upper_set
from src.pl import PLMap, reflection_map, tent_map
from src.utils.errors import PreconditionError, StructuralError

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# ===== Elementary semigroups =====

def test_saturation_rule_classifies_generator_images():
    assert elementary_hom_classify(1, 2, 1) == HomKind.NOT_MORPHISM
    assert elementary_hom_classify(1, 2, 2) == HomKind.ORDER_EMBEDDING
    assert elementary_hom_classify(1, 2, 0) == HomKind.MORPHISM
    assert elementary_hom_classify(1, 2, INF) == HomKind.MORPHISM
    assert elementary_hom_classify(2, 3, 2) == HomKind.MORPHISM


def test_saturation_rule_matches_brute_force():
    for n in range(1, 13):
        for m in range(1, 13):
            for k in list(range(m + 2)) + [INF]:
                assert elementary_hom_classify(n, m, k) == brute_force_classify(n, m, k), (n, m, k)


def test_enumeration_is_ordered_by_generator_image():
    assert [a.k for a in elementary_enumerate(1, 2)] == [0, 2, INF]
    assert [a.k for a in elementary_enumerate(1, 2, "embeddings")] == [2]
    assert [a.k for a in elementary_enumerate(3, 5, "embeddings")] == []
    with pytest.raises(StructuralError):
        elementary_enumerate(0, 1)
    with pytest.raises(StructuralError):
        elementary_enumerate(1, 1, "isomorphisms")


def test_category_embeddings_between_powers():
    alpha = en_category_embedding(2, 1, 3)
    assert (alpha.n, alpha.m, alpha.k) == (2, 8, 4)
    assert alpha.kind == HomKind.ORDER_EMBEDDING
    assert isinstance(en_category_embedding(2, 2, 2), IdentityMorphism)
    with pytest.raises(StructuralError):
        en_category_embedding(2, 3, 1)


def test_saturation_map_kills_nothing_but_zero():
    sat = saturation_map(3)
    assert [sat(x) for x in Elementary(3).elements] == [0, INF, INF, INF, INF]
    assert morphism_laws_check(sat, 0).passed


def test_elementary_composition_is_closed():
    closed = compose(ElementaryMorphism(2, 4, 2), ElementaryMorphism(1, 2, 2))
    assert isinstance(closed, ElementaryMorphism)
    assert (closed.n, closed.m, closed.k) == (1, 4, 4)


def test_law_check_flags_non_morphisms():
    assert morphism_laws_check(ElementaryMorphism(1, 2, 2), 0).passed
    report = morphism_laws_check(ElementaryMorphism(1, 2, 1), 0)
    assert not report.passed
    assert {v.law for v in report.violations} >= {"preserves_add"}
    assert is_order_embedding_on(ElementaryMorphism(1, 2, 2), 0)
    assert not is_order_embedding_on(ElementaryMorphism(1, 2, INF), 0)


# ===== Scalings and maps out of N̄ =====

def test_scaling_factors_are_validated(nbar, soft_ray):
    with pytest.raises(PreconditionError):
        ScalingMorphism(nbar, HALF)
    with pytest.raises(PreconditionError):
        ScalingMorphism(make_softdim(2), Fraction(1, 3))
    with pytest.raises(StructuralError):
        ScalingMorphism(Elementary(2), 2)
    third = ScalingMorphism(soft_ray, Fraction(1, 3))
    assert third(soft(1)) == soft(Fraction(1, 3))
    assert third(soft(INF)) == soft(INF)


def test_scalings_compose_in_closed_form(nbar):
    six = compose(ScalingMorphism(nbar, 2), ScalingMorphism(nbar, 3))
    assert isinstance(six, ScalingMorphism) and six.factor == 6
    assert compose(ScalingMorphism(nbar, INF), ScalingMorphism(nbar, 2)).factor == INF
    assert morphism_laws_check(ScalingMorphism(nbar, 2), 3).passed


def test_maps_out_of_extended_naturals(soft_ray):
    S = make_softdim(2)
    alpha = FromExtNat(S, compact(HALF))
    assert alpha(3) == compact(Fraction(3, 2))
    assert alpha(INF) == soft(INF)
    assert alpha(0) == S.zero
    with pytest.raises(PreconditionError):
        FromExtNat(soft_ray, soft(1))
    doubled = compose(ScalingMorphism(S, 2), alpha)
    assert isinstance(doubled, FromExtNat)
    assert doubled.unit_image == compact(1)
    assert morphism_laws_check(alpha, 3).passed


# ===== Shifts on G =====

def test_shifts_move_thresholds_right(gen):
    tau = ShiftMorphism(gen, QUARTER)
    assert tau(chain_generator(HALF)) == chain_generator(Fraction(3, 4))
    assert tau(gen.top) == gen.infinite_multiple(chain_generator(QUARTER))
    assert ShiftMorphism(gen, 1)(chain_generator(0)) == gen.zero
    assert shift_sequence(gen, 4).amount == QUARTER
    with pytest.raises(PreconditionError):
        ShiftMorphism(gen, 2)
    with pytest.raises(PreconditionError):
        shift_sequence(gen, 0)


def test_shift_composition_caps_at_one(gen):
    total = compose(ShiftMorphism(gen, HALF), ShiftMorphism(gen, Fraction(3, 4)))
    assert isinstance(total, ShiftMorphism) and total.amount == 1
    assert morphism_laws_check(ShiftMorphism(gen, QUARTER), 1).passed


# ===== Matrices between simplicial semigroups =====

def test_matrix_action_and_composition():
    iota = simplicial_hom([[1, 0], [0, 1], [1, 1]])
    assert iota((2, INF)) == (2, INF, INF)
    assert iota((0, 3)) == (0, 3, 3)
    back = simplicial_hom([[1, 0, 0], [0, 1, 0]])
    product = compose(back, iota)
    assert isinstance(product, MatrixMorphism)
    assert product.matrix == ((1, 0), (0, 1))
    assert morphism_laws_check(iota, 2).passed


def test_matrix_predicates():
    assert simplicial_is_embedding([[2, 0], [0, 1]])
    assert not simplicial_is_embedding([[1, 1]])
    assert not simplicial_is_embedding([[INF]])
    assert simplicial_maps_one_to_one([[1, 0], [0, 1], [1, 0]])
    assert not simplicial_maps_one_to_one([[1, 1]])
    assert simplicial_is_retractable([[1, 0], [0, 1], [1, 1]])
    assert not simplicial_is_retractable([[2]])


def test_retractions():
    pair = retraction_of(simplicial_hom([[1, 0], [0, 1], [1, 1]]))
    assert pair.rho.matrix == ((1, 0, 0), (0, 1, 0))
    assert pair.verify(2)
    assert corrected_retraction(pair).verify(2)
    with pytest.raises(PreconditionError):
        retraction_of(simplicial_hom([[2]]))


def test_dual_of_a_unital_matrix_map():
    alpha = matrix_from_function(2, [0, 1, 1])
    dual = lsc_dual_map(alpha)
    assert dual.to_dict() == {"kind": "finite", "table": [0, 1, 1], "surjective": True}
    with pytest.raises(StructuralError):
        matrix_from_function(2, [2])


def test_direct_sum_transform_is_retracted_stagewise():
    T = DirectSumTransform([simplicial_hom([[2]])])
    assert T.connecting(0).matrix == ((1,), (2,))
    assert T.retract(0).verify(2)
    assert T.ideal_member(0, (0,))
    assert not T.ideal_member(0, (1,))
    killing = DirectSumTransform([simplicial_hom([[2]]), simplicial_hom([[0]])])
    assert killing.ideal_member(0, (3,))


# ===== Maps induced by PL surjections =====

def test_pullback_along_the_tent_map():
    alpha = PLInducedMorphism(tent_map())
    assert alpha(upper_set(HALF)) == interval_indicator(QUARTER, Fraction(3, 4))
    assert alpha(alpha.domain.unit) == alpha.domain.unit
    with pytest.raises(PreconditionError):
        PLInducedMorphism(PLMap.through([0, HALF]))


def test_induced_maps_compose_contravariantly(lsc):
    outer, inner = PLInducedMorphism(tent_map()), PLInducedMorphism(reflection_map())
    closed = compose(outer, inner)
    assert isinstance(closed, PLInducedMorphism)
    for f in lsc.basis(1):
        assert closed(f) == outer(inner(f))
    assert morphism_laws_check(pl_identity(), 0).passed


# ===== Descriptors =====

def test_descriptors_rebuild_morphisms(nbar, gen, soft_ray):
    samples = [
        (ElementaryMorphism(1, 2, 2), Elementary(1).basis(0)),
        (ScalingMorphism(soft_ray, Fraction(3, 2)), soft_ray.basis(1)),
        (FromExtNat(make_softdim(2), compact(HALF)), nbar.basis(2)),
        (ShiftMorphism(gen, QUARTER), gen.basis(1)),
        (simplicial_hom([[1, 0], [1, 1]]), simplicial_hom([[1, 0], [1, 1]]).domain.basis(2)),
        (PLInducedMorphism(tent_map()), PLInducedMorphism(tent_map()).domain.basis(1)),
        (IdentityMorphism(nbar), nbar.basis(1)),
    ]
    for alpha, elements in samples:
        rebuilt = morphism_from_descriptor(alpha.describe())
        assert rebuilt.agrees_with(alpha, elements), alpha.label
