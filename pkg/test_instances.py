#!/usr/bin/env python3
"""
Tests for the concrete presentations: N̄, E_n, the SoftDim family, G,
step functions on [0, 1], simplicial semigroups and table semigroups.
"""

from fractions import Fraction

import pytest

from src.instances import (
    INF,
    Elementary,
    ExtNat,
    FiniteTableSemigroup,
    Gen,
    GeneratorG,
    IntervalLsc,
    Simplicial,
    ball,
    chain_generator,
    compact,
    constant,
    interval_indicator,
    make_cu_z,
    make_softdim,
    make_step,
    make_steplsc,
    make_truncated_ep,
    semigroup_from_descriptor,
    soft,
    softdim_embed_stage,
    truncated_embed_stage,
    upper_set,
)
from src.utils.errors import RepresentationError, StructuralError

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# ===== SoftDim family =====

def test_soft_sits_below_compact_at_equal_value():
    S = make_softdim(2)
    assert S.leq(soft(1), compact(1))
    assert not S.leq(compact(1), soft(1))
    assert S.way_below(soft(1), compact(1))
    assert not S.way_below(soft(1), soft(1))
    assert S.is_compact(compact(HALF))
    assert not S.is_compact(soft(HALF))


def test_soft_absorbs_in_sums():
    S = make_softdim(3)
    assert S.add(compact(Fraction(1, 3)), compact(Fraction(2, 3))) == compact(1)
    assert S.add(compact(1), soft(Fraction(1, 3))) == soft(Fraction(4, 3))
    assert S.add(soft(1), soft(INF)) == soft(INF)
    assert S.multiple(3, soft(HALF)) == soft(Fraction(3, 2))
    assert S.infinite_multiple(compact(1)) == soft(INF)


def test_compact_part_follows_the_prime():
    S2, S3 = make_softdim(2), make_softdim(3)
    assert S2.contains(compact(Fraction(3, 8)))
    assert not S2.contains(compact(Fraction(1, 3)))
    assert S3.contains(compact(Fraction(1, 9)))
    assert S2.contains(soft(Fraction(1, 3)))
    assert not make_cu_z().contains(compact(HALF))
    with pytest.raises(StructuralError):
        make_softdim(4)


def test_tagged_values_encode_exactly():
    S = make_softdim(2)
    assert S.encode(soft(HALF)) == {"s": {"num": 1, "den": 2}}
    assert S.decode({"c": {"num": 3, "den": 4}}) == compact(Fraction(3, 4))
    with pytest.raises(ValueError):
        S.decode({"c": {"num": 1, "den": 3}})


def test_truncated_ep_saturates_past_one():
    E = make_truncated_ep(2)
    assert E.add(compact(HALF), compact(HALF)) == E.one
    assert E.add(compact(HALF), soft(HALF)) == soft(1)
    assert E.add(E.one, soft(QUARTER)) == E.top
    assert E.multiple(3, compact(HALF)) == E.top
    assert E.infinite_multiple(soft(QUARTER)) == E.top
    assert not E.contains(compact(2))


def test_stage_embeddings():
    S = make_softdim(2)
    assert softdim_embed_stage(S, 2, 3) == compact(Fraction(3, 4))
    assert softdim_embed_stage(S, 1, INF) == soft(INF)
    E = make_truncated_ep(3)
    assert truncated_embed_stage(E, 1, 2) == compact(Fraction(2, 3))
    assert truncated_embed_stage(E, 1, INF) == E.top


def test_soft_ray_has_only_zero_compact(soft_ray):
    compacts = [x for x in soft_ray.basis(2) if soft_ray.is_compact(x)]
    assert compacts == [soft_ray.zero]


# ===== The generator G =====

def test_generator_sum_and_order(gen):
    a, b = chain_generator(HALF), chain_generator(QUARTER)
    assert gen.add(a, b) == Gen((QUARTER, HALF), None)
    assert gen.leq(a, b)
    assert not gen.leq(b, a)
    assert gen.way_below(a, b)
    assert not gen.way_below(a, a)
    assert gen.leq(b, gen.top)


def test_generator_multiples(gen):
    a = chain_generator(HALF)
    assert gen.multiple(2, a) == Gen((HALF, HALF), None)
    assert gen.infinite_multiple(a) == Gen((), HALF)
    assert gen.infinite_multiple(gen.zero) == gen.zero
    assert gen.numeric_chain_element(QUARTER) == chain_generator(Fraction(3, 4))
    assert chain_generator(1) == gen.zero


def test_generator_chain_increases_to_its_supremum(gen):
    x = chain_generator(HALF)
    chain = gen.approximating_chain(x, 3)
    assert chain[0] == chain_generator(Fraction(3, 4))
    for lo, hi in zip(chain, chain[1:]):
        assert gen.way_below(lo, hi)
    assert all(gen.leq(c, x) for c in chain)


def test_generator_encoding(gen):
    x = gen.add(chain_generator(QUARTER), gen.infinite_multiple(chain_generator(HALF)))
    assert gen.decode(gen.encode(x)) == x
    assert gen.encode(gen.top) == {"thresholds": [], "inf": {"num": 0, "den": 1}}


# ===== Step functions on [0, 1] =====

def test_step_constructor_rejects_bad_data():
    with pytest.raises(RepresentationError):
        make_step([0, HALF, 1], [1, 0, 0], [0, 0])
    with pytest.raises(RepresentationError):
        make_step([0, 1], [0, 0], [0, 0])
    with pytest.raises(RepresentationError):
        interval_indicator(QUARTER, HALF, left_closed=True)


def test_step_normal_form_drops_silent_breaks():
    f = make_step([0, HALF, 1], [1, 1, 1], [1, 1])
    assert f == constant(1)


def test_way_below_needs_closure_containment(lsc):
    inner = interval_indicator(QUARTER, HALF)
    assert lsc.way_below(inner, interval_indicator(0, 1, left_closed=True, right_closed=True))
    assert lsc.way_below(inner, interval_indicator(Fraction(1, 8), Fraction(3, 4)))
    assert not lsc.way_below(inner, inner)
    assert lsc.leq(inner, inner)
    assert not lsc.way_below(constant(INF), constant(INF))
    assert lsc.is_compact(constant(1))


def test_balls_and_upper_sets(lsc):
    assert ball(HALF, 1) == lsc.unit
    assert ball(0, QUARTER) == interval_indicator(0, QUARTER, left_closed=True)
    assert upper_set(HALF) == interval_indicator(HALF, 1, right_closed=True)
    assert lsc.add(upper_set(HALF), upper_set(QUARTER)).cells == (0, 1, 2)


def test_lsc_chain_approximates_non_compact_elements(lsc):
    x = interval_indicator(QUARTER, HALF)
    chain = lsc.approximating_chain(x, 3)
    for lo, hi in zip(chain, chain[1:]):
        assert lsc.leq(lo, hi)
    assert all(lsc.way_below(c, x) for c in chain)


def test_finite_base_spaces_are_simplicial():
    assert make_steplsc(3) == Simplicial(3)
    assert isinstance(make_steplsc([HALF]), IntervalLsc)
    with pytest.raises(StructuralError):
        make_steplsc(0)


# ===== Simplicial and table semigroups =====

def test_simplicial_structure():
    S = Simplicial(3)
    assert S.unit == (1, 1, 1)
    assert S.delta(1) == (0, 1, 0)
    assert S.indicator([0, 2]) == (1, 0, 1)
    assert S.way_below((1, 0, 2), (1, INF, 2))
    assert not S.way_below((INF, 0, 0), (INF, 0, 0))
    assert S.meet((1, 4, 0), (2, 1, INF)) == (1, 1, 0)


def test_table_semigroup_requires_a_full_sum_table():
    with pytest.raises(StructuralError):
        FiniteTableSemigroup("T", ["0", "a"], "0", {("0", "0"): "0"}, [("0", "a")])
    T = FiniteTableSemigroup(
        "T", ["0", "a"], "0",
        {("0", "0"): "0", ("0", "a"): "a", ("a", "a"): "a"},
        [("0", "a")],
    )
    assert T.add("a", "0") == "a"
    assert T.is_compact("a")
    assert semigroup_from_descriptor(T.describe()).describe() == T.describe()


def test_descriptors_rebuild_every_presentation(all_presentations, lsc):
    for S in all_presentations + [lsc, IntervalLsc([QUARTER])]:
        rebuilt = semigroup_from_descriptor(S.describe())
        assert rebuilt == S
        assert rebuilt.basis(1) == S.basis(1)
    with pytest.raises(RepresentationError):
        semigroup_from_descriptor({"kind": "nonsense"})


def test_elementary_rejects_negative_rank():
    with pytest.raises(StructuralError):
        Elementary(-1)
    assert Elementary(0).key == "{0,inf}"
    assert ExtNat().key == "Nbar"
    assert GeneratorG().key == "G"
