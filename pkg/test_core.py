#!/usr/bin/env python3
"""
Tests for the presentation interface, axiom checks and finite-set comparison.
"""

from fractions import Fraction

import pytest

from src.core import (
    FiniteSubset,
    FunctionMorphism,
    IdentityMorphism,
    Reindexed,
    TableMorphism,
    check_axioms,
    check_o5,
    check_o6,
    compare_on,
    comparison_failure,
    compose,
    interpolate_checked,
    is_stably_finite,
    is_weakly_purely_infinite,
    n_refinement,
)
from src.hom import ElementaryMorphism
from src.instances import INF, Elementary, ExtNat, chain_generator
from src.utils.errors import PreconditionError, RepresentationError, StructuralError


# ===== Basis enumeration =====

def test_basis_is_nested_and_canonically_sorted(all_presentations):
    for S in all_presentations:
        for depth in range(2):
            lower, upper = S.basis(depth), S.basis(depth + 1)
            assert set(lower) <= set(upper), S.key
            assert list(upper) == sorted(upper, key=S.order_key)
            assert S.zero in lower


def test_negative_depth_is_rejected(nbar):
    with pytest.raises(PreconditionError):
        nbar.basis(-1)


def test_reindexed_presentation_is_the_same_semigroup(nbar):
    coarse = Reindexed(nbar, stride=2)
    assert coarse == nbar
    assert set(coarse.basis(1)) == {0, 1, 2, INF}
    assert coarse.describe() == {"kind": "reindexed", "base": {"kind": "extnat"}, "stride": 2, "offset": 0}
    with pytest.raises(PreconditionError):
        Reindexed(nbar, stride=0)


def test_fresh_instances_compare_equal():
    assert ExtNat() == ExtNat()
    assert Elementary(2) == Elementary(2)
    assert Elementary(2) != Elementary(3)
    assert len({ExtNat(), ExtNat(), Elementary(1)}) == 2


def test_require_rejects_foreign_values(nbar):
    assert nbar.require(3) == 3
    with pytest.raises(StructuralError):
        nbar.require(-1)
    with pytest.raises(StructuralError):
        Elementary(2).require(3)


def test_multiples_and_chains(nbar):
    assert nbar.multiple(3, INF) == INF
    assert nbar.multiple(0, INF) == 0
    assert nbar.infinite_multiple(2) == INF
    assert nbar.approximating_chain(INF, 3) == [1, 2, 3]
    assert Elementary(2).multiple(3, 1) == INF


def test_interpolation_contract(nbar, gen):
    assert interpolate_checked(nbar, 1, 3) == 1
    z = interpolate_checked(gen, chain_generator(Fraction(1, 2)), chain_generator(Fraction(1, 4)))
    assert z == chain_generator(Fraction(3, 8))
    with pytest.raises(PreconditionError):
        interpolate_checked(nbar, INF, INF)


# ===== Axioms and optional predicates =====

def test_every_presentation_passes_the_axiom_check(all_presentations):
    for S in all_presentations:
        report = check_axioms(S, 1)
        assert report.passed, (S.key, [v.to_dict() for v in report.violations[:3]])
        assert report.checked == len(S.basis(1))


def test_interval_lsc_passes_the_axiom_check(lsc):
    report = check_axioms(lsc, 0)
    assert report.passed
    assert report.to_dict()["passed"] is True


def test_axiom_report_lists_non_compact_elements(nbar):
    report = check_axioms(nbar, 2)
    assert report.non_compact == ["inf"]


class _LopsidedDoubling(ExtNat):
    """N̄ with x + x off by one for a single late basis element."""

    def __init__(self, target):
        super().__init__()
        self.target = target

    def add(self, x, y):
        if x == y == self.target:
            return 2 * x + 1
        return super().add(x, y)


def test_axiom_check_reaches_the_end_of_the_basis():
    late = ExtNat().basis(44)[-1]
    S = _LopsidedDoubling(late)
    basis = S.basis(44)
    assert basis.index(late) == 45
    report = check_axioms(S, 44)
    assert report.exhaustive
    assert not report.passed
    laws = {(v.law, tuple(v.witnesses)) for v in report.violations}
    assert ("add_associative", (1, late, late)) in laws


@pytest.mark.parametrize("n", range(13))
def test_elementary_carriers_pass_in_full(n):
    report = check_axioms(Elementary(n), 0)
    assert report.exhaustive and report.passed
    assert report.checked == n + 2


def test_extended_naturals_pass_at_depth_twenty(nbar):
    report = check_axioms(nbar, 20)
    assert report.passed
    assert report.checked == 22


class _BrittleSum(ExtNat):
    """N̄ where one value reachable only as a sum is not way below anything."""

    def __init__(self, brittle):
        super().__init__()
        self.brittle = brittle

    def way_below(self, x, y):
        if x == self.brittle:
            return False
        return super().way_below(x, y)


def test_additivity_is_checked_on_late_pairs():
    report = check_axioms(_BrittleSum(121), 70)
    assert report.exhaustive and not report.passed
    assert {v.law for v in report.violations} == {"way_below_additive"}
    assert [60, 60, 61, 61] in [v.witnesses for v in report.violations]


def test_extended_naturals_pass_on_two_hundred_elements(nbar):
    report = check_axioms(nbar, 198)
    assert report.checked == 200
    assert report.exhaustive and report.passed


def test_capped_axiom_check_never_passes(nbar):
    report = check_axioms(nbar, 2, cap=2)
    assert report.violations == []
    assert report.passed is False
    assert report.to_dict()["exhaustive"] is False
    assert report.to_dict()["truncated_at"] == 2
    assert check_axioms(nbar, 2, cap=10).exhaustive


def test_stable_finiteness(nbar, soft_ray):
    assert is_stably_finite(nbar, 3) == (True, None)
    assert is_stably_finite(soft_ray, 1) == (True, None)
    finite, witness = is_stably_finite(Elementary(2), 0)
    assert finite is False
    assert witness is not None


def test_weak_pure_infiniteness(nbar):
    assert is_weakly_purely_infinite(Elementary(0), 1, 1) == (True, None)
    assert is_weakly_purely_infinite(nbar, 1, 1) == (False, 1)


def test_o5_and_o6_hold_in_extended_naturals(nbar):
    assert check_o5(nbar, 2) == []
    assert check_o6(nbar, 1) == []


# ===== Finite subsets and comparison =====

def test_finite_subset_deduplicates_and_records_pairs():
    E = Elementary(2)
    F = FiniteSubset.of(E, [2, 0, 1, 1])
    assert len(F) == 3
    assert set(F) == {0, 1, 2}
    # every element of E_2 is compact, so << is <=
    assert len(F.ll_pairs) == 6
    assert len(F.strict_pairs) == 3
    assert sorted(F.encoded(), key=str) == [0, 1, 2]


def test_comparison_is_reflexive_and_detects_differences():
    alpha = ElementaryMorphism(1, 2, 1)
    beta = ElementaryMorphism(1, 2, 2)
    F = FiniteSubset.of(Elementary(1), Elementary(1).basis(0))
    assert compare_on(alpha, alpha, F)
    assert not compare_on(alpha, beta, F)
    assert comparison_failure(alpha, beta, F) is not None


def test_comparison_requires_matching_shapes(nbar):
    alpha = ElementaryMorphism(1, 2, 1)
    other = ElementaryMorphism(1, 3, 1)
    with pytest.raises(StructuralError):
        compare_on(alpha, other, FiniteSubset.of(Elementary(1), [0, 1]))
    with pytest.raises(StructuralError):
        compare_on(alpha, alpha, FiniteSubset.of(nbar, [0, 1]))


def test_n_refinement_inserts_interpolants(gen):
    low, high = chain_generator(Fraction(1, 2)), chain_generator(Fraction(1, 4))
    F = FiniteSubset.of(gen, [low, high])
    refined = n_refinement(F, 2)
    assert len(refined) == 4
    assert chain_generator(Fraction(3, 8)) in refined
    assert chain_generator(Fraction(5, 16)) in refined
    with pytest.raises(PreconditionError):
        n_refinement(F, 0)


def test_n_refinement_of_compact_chain_is_stable():
    F = FiniteSubset.of(Elementary(2), [0, 2])
    assert set(n_refinement(F, 2)) == {0, 1, 2}


# ===== Morphism plumbing =====

def test_composition_absorbs_identities_and_checks_shapes(nbar):
    doubling = FunctionMorphism(nbar, nbar, lambda x: nbar.multiple(2, x), "double")
    assert compose(IdentityMorphism(nbar), doubling) is doubling
    assert compose(doubling, IdentityMorphism(nbar)) is doubling
    quadruple = compose(doubling, doubling)
    assert quadruple(3) == 12
    assert quadruple(INF) == INF
    with pytest.raises(StructuralError):
        compose(doubling, ElementaryMorphism(1, 2, 1))


def test_table_morphism_reports_missing_values():
    E = Elementary(1)
    table = TableMorphism(E, E, {0: 0, 1: 1})
    assert table(1) == 1
    with pytest.raises(RepresentationError):
        table(INF)
    assert table.describe()["kind"] == "table"
