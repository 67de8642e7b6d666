"""The Fraïssé engine: categories, demand schedules, prefixes and zig-zags."""

from .builtin import BUILTIN_CATEGORIES, builtin_category, obstruction_certificate
from .category import FraisseCategory, Span
from .diagnostics import (
    FactorizationWitness,
    ReplayReport,
    SaturationRow,
    SEPReport,
    check_sep,
    completeness_gaps,
    factorization_witness,
    replay_prefix,
    saturation_ledger,
    skip_holds,
)
from .engine import (
    DEFAULT_BOUND,
    Amalgam,
    JEPResult,
    amalgamate,
    build_fraisse_prefix,
    check_jep,
    find_return,
    verify_fraisse_property,
)
from .intertwine import EndpointCertificate, HomogeneityResult, homogeneity_iso, uniqueness_intertwine, universality_map
from .prefix import FraissePrefix, LedgerEntry, ObjectEntry, ReturnCertificate, ReturnFailure
from .schedule import Demand, DemandSchedule

__all__ = [
    "BUILTIN_CATEGORIES",
    "DEFAULT_BOUND",
    "Amalgam",
    "Demand",
    "DemandSchedule",
    "EndpointCertificate",
    "FactorizationWitness",
    "FraisseCategory",
    "FraissePrefix",
    "HomogeneityResult",
    "JEPResult",
    "LedgerEntry",
    "ObjectEntry",
    "ReplayReport",
    "ReturnCertificate",
    "ReturnFailure",
    "SEPReport",
    "SaturationRow",
    "Span",
    "amalgamate",
    "build_fraisse_prefix",
    "builtin_category",
    "check_jep",
    "check_sep",
    "completeness_gaps",
    "factorization_witness",
    "find_return",
    "homogeneity_iso",
    "obstruction_certificate",
    "replay_prefix",
    "saturation_ledger",
    "skip_holds",
    "uniqueness_intertwine",
    "universality_map",
    "verify_fraisse_property",
]
