"""Exact piecewise-linear maps, mountain climbing and K_P amalgamation."""

from .approx import endpoint_normalize, endpoint_normalizer, normalizing_map, rational_peak_approx
from .kp import KPAmalgam, enumerate_pl_surjections, grid_family_set, grid_of, kp_amalgamate
from .mountain import LevelSetGraph, mountain_climb
from .plmap import (
    PLMap,
    identity_map,
    pl_compose,
    pl_sup_distance,
    reflection_map,
    require_surjection,
    tent_map,
)

__all__ = [
    "KPAmalgam",
    "LevelSetGraph",
    "PLMap",
    "endpoint_normalize",
    "endpoint_normalizer",
    "enumerate_pl_surjections",
    "grid_family_set",
    "grid_of",
    "identity_map",
    "kp_amalgamate",
    "mountain_climb",
    "normalizing_map",
    "pl_compose",
    "pl_sup_distance",
    "rational_peak_approx",
    "reflection_map",
    "require_surjection",
    "tent_map",
]
