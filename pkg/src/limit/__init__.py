"""Cauchy limits, formal colimits and intertwinings."""

from .cauchy import (
    ConvergenceCertificate,
    LimitMorphism,
    PairConvergence,
    cauchy_limit,
    cauchy_phi,
    convergence_certificate,
)
from .colimit import (
    ColimitElement,
    FormalColimit,
    Identification,
    IdentificationReport,
    Verdict,
    colimit_leq,
    colimit_make,
    identify_colimit,
)
from .intertwining import (
    InducedMorphism,
    InducedPair,
    Intertwining,
    IntertwiningCertificate,
    one_sided_induced,
    stage_set,
    two_sided_induced,
)
from .sequence import DEFAULT_HORIZON, MorphismSequence

__all__ = [
    "DEFAULT_HORIZON",
    "ColimitElement",
    "ConvergenceCertificate",
    "FormalColimit",
    "Identification",
    "IdentificationReport",
    "InducedMorphism",
    "InducedPair",
    "Intertwining",
    "IntertwiningCertificate",
    "LimitMorphism",
    "MorphismSequence",
    "PairConvergence",
    "Verdict",
    "cauchy_limit",
    "cauchy_phi",
    "colimit_leq",
    "colimit_make",
    "convergence_certificate",
    "identify_colimit",
    "one_sided_induced",
    "stage_set",
    "two_sided_induced",
]
