"""Hom-set metrics built from Cu-paths out of the generator G."""

from .bridge import Squeeze, bridge_eps_for_set, bridge_set_for_eps, find_squeeze, squeeze_certificates
from .convergence import FamilyConvergence, MetricLimit, d_lambda_cauchy_limit, lambda_fin_equivalence
from .distance import d_G, d_Lambda, distance_profile, lsc_metric
from .family import (
    GeneratingFamily,
    ball_family,
    chain_path,
    counterexample_family,
    cu_z_family,
    lambda_path,
    ray_path,
    soft_ray_family,
    uniform_basis_family,
)
from .paths import (
    AffinePath,
    BallPath,
    CuPath,
    StepPath,
    chain_size,
    constant_path,
    discriminating_path,
    has_chain,
    path_from_chain,
)

__all__ = [
    "AffinePath",
    "BallPath",
    "CuPath",
    "FamilyConvergence",
    "GeneratingFamily",
    "MetricLimit",
    "Squeeze",
    "StepPath",
    "ball_family",
    "bridge_eps_for_set",
    "bridge_set_for_eps",
    "chain_path",
    "chain_size",
    "constant_path",
    "counterexample_family",
    "cu_z_family",
    "d_G",
    "d_Lambda",
    "d_lambda_cauchy_limit",
    "discriminating_path",
    "distance_profile",
    "find_squeeze",
    "has_chain",
    "lambda_fin_equivalence",
    "lambda_path",
    "lsc_metric",
    "path_from_chain",
    "ray_path",
    "soft_ray_family",
    "squeeze_certificates",
    "uniform_basis_family",
]
