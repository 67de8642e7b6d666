"""Morphism families, law checks, classification and duality."""

from .elementary import (
    ElementaryMorphism,
    HomKind,
    brute_force_classify,
    elementary_enumerate,
    elementary_hom_classify,
    en_category_embedding,
    saturation_map,
)
from .laws import is_order_embedding_on, morphism_laws_check
from .pl_induced import PLInducedMorphism, pl_identity, pl_induced_morphism, pullback_step
from .registry import morphism_from_descriptor
from .scaling import FromExtNat, ScalingMorphism
from .shift import ShiftMorphism, shift_sequence
from .simplicial import (
    DirectSumTransform,
    DualMap,
    MatrixMorphism,
    RetractPair,
    corrected_retraction,
    enumerate_matrices,
    lsc_dual_map,
    matrix_from_function,
    retraction_of,
    simplicial_hom,
    simplicial_is_embedding,
    simplicial_is_retractable,
    simplicial_maps_one_to_one,
)

__all__ = [
    "DirectSumTransform",
    "DualMap",
    "ElementaryMorphism",
    "FromExtNat",
    "HomKind",
    "MatrixMorphism",
    "PLInducedMorphism",
    "RetractPair",
    "ScalingMorphism",
    "ShiftMorphism",
    "brute_force_classify",
    "corrected_retraction",
    "elementary_enumerate",
    "elementary_hom_classify",
    "en_category_embedding",
    "enumerate_matrices",
    "is_order_embedding_on",
    "lsc_dual_map",
    "matrix_from_function",
    "morphism_from_descriptor",
    "morphism_laws_check",
    "pl_identity",
    "pl_induced_morphism",
    "pullback_step",
    "retraction_of",
    "saturation_map",
    "shift_sequence",
    "simplicial_hom",
    "simplicial_is_embedding",
    "simplicial_is_retractable",
    "simplicial_maps_one_to_one",
]
