"""Concrete Cu-semigroups with exact arithmetic."""

from .elementary import Elementary, make_elementary, make_two_point
from .extnat import INF, ExtNat, ext_add, ext_mul, is_inf
from .generator import Gen, GeneratorG, as_step, chain_generator, make_generator
from .registry import semigroup_from_descriptor
from .simplicial import Simplicial, make_simplicial
from .softdim import (
    SoftDim,
    Tagged,
    TruncatedEp,
    compact,
    make_cu_z,
    make_soft_ray,
    make_softdim,
    make_truncated_ep,
    soft,
    softdim_embed_stage,
    truncated_embed_stage,
)
from .steplsc import IntervalLsc, Step, ball, constant, interval_indicator, make_step, make_steplsc, upper_set
from .table import FiniteTableSemigroup

__all__ = [
    "INF",
    "Elementary",
    "ExtNat",
    "FiniteTableSemigroup",
    "Gen",
    "GeneratorG",
    "IntervalLsc",
    "Simplicial",
    "SoftDim",
    "Step",
    "Tagged",
    "TruncatedEp",
    "as_step",
    "ball",
    "chain_generator",
    "compact",
    "constant",
    "ext_add",
    "ext_mul",
    "interval_indicator",
    "is_inf",
    "make_cu_z",
    "make_elementary",
    "make_generator",
    "make_simplicial",
    "make_soft_ray",
    "make_softdim",
    "make_step",
    "make_steplsc",
    "make_truncated_ep",
    "make_two_point",
    "semigroup_from_descriptor",
    "soft",
    "softdim_embed_stage",
    "truncated_embed_stage",
    "upper_set",
]
