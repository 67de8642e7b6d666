#!/usr/bin/env python3
"""
Tests for exact PL maps, endpoint normalisation, mountain climbing and
near amalgamation of the induced Lsc morphisms.
"""

import random
from fractions import Fraction

import pytest

from src.core import compare_on, compose
from src.hom import PLInducedMorphism, ScalingMorphism, pl_identity
from src.pl import (
    LevelSetGraph,
    PLMap,
    endpoint_normalize,
    enumerate_pl_surjections,
    grid_family_set,
    grid_of,
    identity_map,
    kp_amalgamate,
    mountain_climb,
    pl_compose,
    pl_sup_distance,
    rational_peak_approx,
    reflection_map,
    require_surjection,
    tent_map,
)
from src.utils.errors import PreconditionError, RepresentationError

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# ===== Maps =====

def test_evaluation_is_exact():
    tent = tent_map()
    assert tent(QUARTER) == HALF
    assert tent(Fraction(3, 4)) == HALF
    assert tent.preimage_points(HALF) == {QUARTER, Fraction(3, 4)}
    with pytest.raises(PreconditionError):
        tent(2)


def test_breakpoints_must_increase():
    with pytest.raises(RepresentationError):
        PLMap((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)))
    with pytest.raises(RepresentationError):
        PLMap((Fraction(0),), (Fraction(0),))


def test_normal_form_and_composition():
    assert PLMap.through([0, HALF, 1]).normalized() == identity_map()
    assert pl_compose(reflection_map(), reflection_map()) == identity_map()
    double_tent = pl_compose(tent_map(), tent_map())
    assert double_tent == PLMap.through([0, 1, 0, 1, 0])
    assert pl_sup_distance(identity_map(), tent_map()) == 1


def test_surjection_requirements():
    assert require_surjection(tent_map()) == tent_map()
    with pytest.raises(PreconditionError):
        require_surjection(PLMap.through([0, HALF]))
    with pytest.raises(PreconditionError):
        require_surjection(PLMap.through([0, 1, 1]), allow_flats=False)


# ===== Normalisation and approximation =====

def test_endpoint_normalisation():
    assert endpoint_normalize(reflection_map()) == identity_map()
    fixed = endpoint_normalize(tent_map())
    assert fixed.ys[0] == 0 and fixed.ys[-1] == 1
    assert fixed.is_surjective()
    assert endpoint_normalize(identity_map()) == identity_map()


def test_peak_approximation_removes_flats_within_eps():
    f = PLMap.through([0, HALF, HALF, 1])
    approx = rational_peak_approx(f, QUARTER)
    assert not approx.has_flats()
    assert approx.is_surjective()
    assert pl_sup_distance(f, approx) <= QUARTER
    assert rational_peak_approx(tent_map(), QUARTER) == tent_map()
    with pytest.raises(PreconditionError):
        rational_peak_approx(f, 0)


def test_mountain_climbing_meets_exactly():
    f1 = identity_map()
    f2 = PLMap.through([0, Fraction(3, 4), QUARTER, 1])
    g1, g2 = mountain_climb(f1, f2)
    assert f1.compose(g1) == f2.compose(g2)
    assert g1.is_surjective() and g2.is_surjective()


def test_mountain_climbing_needs_fixed_endpoints():
    with pytest.raises(PreconditionError):
        mountain_climb(identity_map(), reflection_map())
    with pytest.raises(PreconditionError):
        mountain_climb(identity_map(), PLMap.through([0, HALF, HALF, 1]))


def _random_climbable(rng, pieces, denominator=6):
    while True:
        values = [0] + [Fraction(rng.randint(0, denominator), denominator) for _ in range(pieces - 1)] + [1]
        if all(a != b for a, b in zip(values, values[1:])):
            return PLMap.through(values)


@pytest.mark.parametrize("seed", range(100))
def test_mountain_climbing_on_random_pairs(seed):
    rng = random.Random(seed)
    f1 = _random_climbable(rng, rng.randint(1, 7))
    f2 = _random_climbable(rng, rng.randint(1, 7))
    g1, g2 = mountain_climb(f1, f2)
    assert f1.compose(g1) == f2.compose(g2)
    assert g1.is_surjective() and g2.is_surjective()
    assert mountain_climb(f1, f2) == (g1, g2)


def _all_shortest_paths(graph, source, target):
    paths = [[source]]
    while paths:
        done = [p for p in paths if p[-1] == target]
        if done:
            return done
        paths = [p + [v] for p in paths for v in graph.adjacency.get(p[-1], ()) if v not in p]
    return []


def test_level_set_path_is_the_least_shortest_path():
    grid = LevelSetGraph()
    for i in range(3):
        for j in range(3):
            if i < 2:
                grid.add_edge((i, j), (i + 1, j))
            if j < 2:
                grid.add_edge((i, j), (i, j + 1))
    path = grid.shortest_path((0, 0), (2, 2))
    assert path == [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)]
    assert path == min(_all_shortest_paths(grid, (0, 0), (2, 2)))

    f1, f2 = PLMap.through([0, Fraction(3, 4), QUARTER, 1]), PLMap.through([0, HALF, QUARTER, Fraction(5, 6), 1])
    level_set = LevelSetGraph.build(f1, f2)
    origin, corner = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))
    assert level_set.shortest_path(origin, corner) == min(_all_shortest_paths(level_set, origin, corner))


# ===== Induced morphisms and amalgamation =====

def test_grid_family():
    F = grid_family_set(2)
    assert len(F) == 4
    assert grid_of(F) == 2
    with pytest.raises(PreconditionError):
        grid_family_set(0)


def test_amalgamation_of_induced_maps():
    alpha1, alpha2 = PLInducedMorphism(tent_map()), pl_identity()
    F = grid_family_set(2)
    amalgam = kp_amalgamate(alpha1, alpha2, F)
    assert amalgam.eps == HALF
    assert compare_on(compose(amalgam.beta1, alpha1), compose(amalgam.beta2, alpha2), F)
    assert set(amalgam.to_dict()) == {"g1", "g2", "eps"}


def test_amalgamation_of_equal_maps_is_trivial():
    alpha = PLInducedMorphism(tent_map())
    amalgam = kp_amalgamate(alpha, alpha, grid_family_set(3))
    assert amalgam.g1 == identity_map() and amalgam.g2 == identity_map()


def test_amalgamation_rejects_other_morphisms(soft_ray):
    with pytest.raises(PreconditionError):
        kp_amalgamate(ScalingMorphism(soft_ray, 2), pl_identity(), grid_family_set(1))


def test_enumeration_of_small_surjections():
    assert len(enumerate_pl_surjections(1, 1)) == 2
    two = enumerate_pl_surjections(2, 1)
    assert len(two) == 4
    assert tent_map() in two
    assert all(h.is_surjective() and not h.has_flats() for h in enumerate_pl_surjections(2, 2))


def _random_surjection(rng, pieces, denominator=6):
    values = [0] + [Fraction(rng.randint(0, denominator), denominator) for _ in range(pieces - 1)] + [1]
    if rng.random() < HALF:
        values.reverse()
    return PLMap.through(values)


@pytest.mark.parametrize("seed", range(25))
def test_near_amalgamation_on_random_pairs_at_grid_eight(seed):
    rng = random.Random(1000 + seed)
    alpha1 = PLInducedMorphism(_random_surjection(rng, rng.randint(1, 5)))
    alpha2 = PLInducedMorphism(_random_surjection(rng, rng.randint(1, 5)))
    F = grid_family_set(8)
    amalgam = kp_amalgamate(alpha1, alpha2, F)
    assert amalgam.eps == Fraction(1, 8)
    assert compare_on(compose(amalgam.beta1, alpha1), compose(amalgam.beta2, alpha2), F)
