"""Spot-checks and ledgers layered on the engine.

None of these decide anything in general: separability is checked on a
bounded window of the hom streams, saturation and factorization only on
what a finite prefix can show.
"""

from dataclasses import dataclass, field
from itertools import islice
from typing import Any, Callable, Dict, List, Optional

from ..core.comparison import compare_on
from ..core.morphism import CuMorphism, compose
from ..core.semigroup import CuSemigroup
from ..utils.codec import dumps
from ..utils.logger import get_logger
from .category import FraisseCategory
from .engine import DEFAULT_BOUND, build_fraisse_prefix
from .prefix import FraissePrefix, basis_subset
from .schedule import DemandSchedule

logger = get_logger(__name__)


# ===== Separability =====

@dataclass
class SEPReport:
    """Bounded check of the dominating-subcategory clauses; a pass is evidence, not proof."""
    category: str
    subcategory: str
    depth: int
    bound: int
    objects_checked: int = 0
    morphisms_checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "category": self.category,
            "subcategory": self.subcategory,
            "depth": self.depth,
            "bound": self.bound,
            "semi_decision": True,
            "objects_checked": self.objects_checked,
            "morphisms_checked": self.morphisms_checked,
            "passed": self.passed,
            "failures": self.failures,
        }


def _dominated(cat: FraisseCategory, sub: FraisseCategory, sigma: CuMorphism, depth: int, bound: int) -> bool:
    S = sigma.domain
    F = basis_subset(S, depth)
    for T in islice(sub.objects(), bound):
        taus = list(islice(sub.homs(S, T), bound))
        if not taus:
            continue
        for alpha in islice(cat.homs(sigma.codomain, T), bound):
            left = compose(alpha, sigma)
            if any(compare_on(left, tau, F) for tau in taus):
                return True
    return False


def check_sep(cat: FraisseCategory, sub: FraisseCategory, depth: int = 1, bound: int = 8) -> SEPReport:
    """Every A maps into some S in `sub`; every σ: S -> A is ≃_F some τ after some α: A -> T."""
    report = SEPReport(cat.name, sub.name, depth, bound)
    sub_objects = list(islice(sub.objects(), bound))
    for A in islice(cat.objects(), bound):
        report.objects_checked += 1
        if not any(next(iter(cat.homs(A, S)), None) is not None for S in sub_objects):
            report.failures.append({"clause": "object", "object": A.describe()})
    for S in sub_objects:
        for sigma in islice(cat.outgoing(S), bound):
            report.morphisms_checked += 1
            if not _dominated(cat, sub, sigma, depth, bound):
                report.failures.append({"clause": "morphism", "sigma": sigma.describe()})
    logger.info(
        f"Separability spot-check of {sub.name} in {cat.name}: {'pass' if report.passed else 'fail'}",
        extra={"extra_fields": {"objects": report.objects_checked, "morphisms": report.morphisms_checked}},
    )
    return report


# ===== Saturation =====

@dataclass
class SaturationRow:
    stage: int
    generator: Any
    idempotent_at: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {"stage": self.stage, "generator": self.generator, "idempotent_at": self.idempotent_at}


def saturation_ledger(prefix: FraissePrefix) -> List[SaturationRow]:
    """For each stage, the first j with σ_{i,j}(g) + σ_{i,j}(g) = σ_{i,j}(g)."""
    rows: List[SaturationRow] = []
    for i, S in enumerate(prefix.stages):
        g = prefix.category.stage_generator(S)
        found = None
        for j in range(i, prefix.length):
            y = prefix.connecting(i, j).apply(g)
            if prefix.stages[j].add(y, y) == y:
                found = j
                break
        rows.append(SaturationRow(i, S.encode(g), found))
    return rows


# ===== Factorization =====

@dataclass
class FactorizationWitness:
    """α ≃_F ι_i ∘ α_i on B_depth of the domain, for a stage map ι_i of the closed form."""
    stage: Optional[int]
    morphism: Optional[CuMorphism]
    depth: int
    verified: bool
    reason: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stage": self.stage,
            "morphism": self.morphism.describe() if self.morphism is not None else None,
            "depth": self.depth,
            "verified": self.verified,
            "reason": self.reason,
        }


def factorization_witness(prefix: FraissePrefix, alpha: CuMorphism, depth: int = 2) -> FactorizationWitness:
    cat = prefix.category
    identified = cat.identification(prefix.stages, prefix.maps)
    if identified is None:
        return FactorizationWitness(None, None, depth, False, f"{cat.name} has no closed-form limit")
    target, stage_maps = identified
    if alpha.codomain != target:
        return FactorizationWitness(None, None, depth, False, f"{alpha.label} does not land in {target.key}")
    found = cat.factor_through_stage(prefix.stages, prefix.maps, alpha)
    if found is None:
        return FactorizationWitness(None, None, depth, False, "no stage of the prefix is deep enough")
    i, alpha_i = found
    iota: Callable[[int], CuMorphism] = stage_maps if callable(stage_maps) else (lambda k: list(stage_maps)[k])
    F = basis_subset(alpha.domain, depth)
    verified = compare_on(compose(iota(i), alpha_i), alpha, F)
    return FactorizationWitness(i, alpha_i, depth, verified, "" if verified else "stage factor disagrees on F")


# ===== Completeness and replay =====

def _built_before(prefix: FraissePrefix, index: int) -> int:
    """Highest stage an entry for a demand before `index` already used."""
    stages = [entry.target for entry in prefix.ledger if entry.demand.index < index]
    stages += [entry.stage for entry in prefix.objects if entry.demand.index < index]
    return max(stages, default=0)


def skip_holds(prefix: FraissePrefix, row: Dict[str, Any]) -> bool:
    """The archived prefix bears out the recorded reason for a skipped demand."""
    cat = prefix.category
    reason = row.get("reason")
    if reason == "stage not built":
        return row["stage"] > _built_before(prefix, row["index"])
    if reason == "no such morphism":
        if row["stage"] > prefix.last:
            return False
        S = prefix.stages[row["stage"]]
        return next(islice(cat.outgoing(S), row["morphism"], None), None) is None
    if reason == "no such object":
        return cat.object_at(row["object"]) is None
    return False


def completeness_gaps(prefix: FraissePrefix) -> List[int]:
    """Demand indices below `steps` that were neither met nor skipped for a reason that holds."""
    met = {entry.demand.index for entry in prefix.ledger}
    met.update(entry.demand.index for entry in prefix.objects)
    met.update(row["index"] for row in prefix.skipped if skip_holds(prefix, row))
    return [n for n in range(prefix.steps) if n not in met]


@dataclass
class ReplayReport:
    """Archive re-check; `matches_rebuild` is None unless a rebuild was asked for."""
    stale_entries: List[int]
    gaps: List[int]
    matches_rebuild: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return not self.stale_entries and not self.gaps

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "stale_entries": self.stale_entries,
            "gaps": self.gaps,
            "matches_rebuild": self.matches_rebuild,
        }


def replay_prefix(
    cat: FraisseCategory,
    data: Dict[str, Any],
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
    start: Optional[CuSemigroup] = None,
    rebuild: bool = False,
) -> ReplayReport:
    """Re-check an archived prefix from its own certificates.

    The verdict uses only the archive. With `rebuild`, the prefix is also
    rebuilt from its seed and step count within `bound` and compared; the
    comparison is reported but does not decide the verdict.
    """
    archived = FraissePrefix.from_dict(cat, data)
    report = ReplayReport(archived.recheck(), completeness_gaps(archived))
    if rebuild:
        rebuilt = build_fraisse_prefix(cat, DemandSchedule(archived.seed), archived.steps, bound, threads, start or archived.stages[0])
        report.matches_rebuild = dumps(rebuilt.to_dict()) == dumps(archived.to_dict())
    if not report.passed or report.matches_rebuild is False:
        logger.warning(
            f"Replay of {cat.name} prefix disagrees with the archive",
            extra={"extra_fields": report.to_dict()},
        )
    return report
