"""Abstract Cu-semigroups, finite subsets, comparison and axiom checks."""

from .axioms import AxiomReport, Violation, check_axioms, check_o5, check_o6, is_stably_finite, is_weakly_purely_infinite
from .comparison import compare_on, comparison_failure, n_refinement
from .morphism import ComposedMorphism, CuMorphism, FunctionMorphism, IdentityMorphism, TableMorphism, compose
from .semigroup import CuSemigroup, Element, Reindexed, interpolate_checked
from .subset import FiniteSubset

__all__ = [
    "AxiomReport",
    "ComposedMorphism",
    "CuMorphism",
    "CuSemigroup",
    "Element",
    "FiniteSubset",
    "FunctionMorphism",
    "IdentityMorphism",
    "Reindexed",
    "TableMorphism",
    "Violation",
    "check_axioms",
    "check_o5",
    "check_o6",
    "compare_on",
    "comparison_failure",
    "compose",
    "interpolate_checked",
    "is_stably_finite",
    "is_weakly_purely_infinite",
    "n_refinement",
]
