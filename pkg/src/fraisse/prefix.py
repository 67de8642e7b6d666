"""Finite prefixes of Fraïssé sequences and their certificate ledgers."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..core.comparison import compare_on, comparison_failure
from ..core.morphism import CuMorphism, compose
from ..core.semigroup import CuSemigroup
from ..core.subset import FiniteSubset
from ..hom.registry import morphism_from_descriptor
from ..instances.registry import semigroup_from_descriptor
from ..limit.colimit import FormalColimit, IdentificationReport, identify_colimit
from ..utils.errors import PreconditionError, RepresentationError, StructuralError
from ..utils.logger import get_logger
from .category import FraisseCategory
from .schedule import Demand

logger = get_logger(__name__)


def basis_subset(S: CuSemigroup, level: int) -> FiniteSubset:
    return FiniteSubset.of(S, S.basis(level))


@dataclass
class LedgerEntry:
    """A satisfied morphism demand: β∘α ≃_{B_level} σ_{stage,target}."""
    demand: Demand
    stage: int
    alpha: CuMorphism
    target: int
    beta: CuMorphism
    via: str

    @property
    def level(self) -> int:
        return self.demand.level

    def recheck(self, prefix: 'FraissePrefix') -> bool:
        F = basis_subset(self.alpha.domain, self.level)
        return compare_on(compose(self.beta, self.alpha), prefix.connecting(self.stage, self.target), F)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "demand": self.demand.to_dict(),
            "stage": self.stage,
            "target": self.target,
            "alpha": self.alpha.describe(),
            "beta": self.beta.describe(),
            "via": self.via,
        }


@dataclass
class ObjectEntry:
    """A satisfied object demand: `hom` maps the object into `stage`."""
    demand: Demand
    obj: CuSemigroup
    stage: int
    hom: CuMorphism
    via: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "demand": self.demand.to_dict(),
            "object": self.obj.describe(),
            "stage": self.stage,
            "hom": self.hom.describe(),
            "via": self.via,
        }


@dataclass
class ReturnCertificate:
    """(j, β) with β∘α ≃_F σ_{i,j}."""
    stage: int
    target: int
    alpha: CuMorphism
    beta: CuMorphism
    F: FiniteSubset
    via: str = "search"

    passed = True

    def recheck(self, prefix: 'FraissePrefix') -> bool:
        return compare_on(compose(self.beta, self.alpha), prefix.connecting(self.stage, self.target), self.F)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": True,
            "stage": self.stage,
            "target": self.target,
            "alpha": self.alpha.describe(),
            "beta": self.beta.describe(),
            "F": self.F.encoded(),
            "via": self.via,
        }


@dataclass
class ReturnFailure:
    """No return map in the prefix; `missing` is the demand that would supply one."""
    stage: int
    alpha: CuMorphism
    F: FiniteSubset
    missing: Optional[Demand]
    reason: str

    passed = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": False,
            "stage": self.stage,
            "alpha": self.alpha.describe(),
            "F": self.F.encoded(),
            "missing": self.missing.to_dict() if self.missing is not None else None,
            "reason": self.reason,
        }


class FraissePrefix:
    """S_0 -> S_1 -> ... -> S_m built from a category, with its ledger."""

    def __init__(self, category: FraisseCategory, start: CuSemigroup, seed: int = 0) -> None:
        self.category: FraisseCategory = category
        self.stages: List[CuSemigroup] = [start]
        self.maps: List[CuMorphism] = []
        self.seed: int = seed
        self.ledger: List[LedgerEntry] = []
        self.objects: List[ObjectEntry] = []
        self.skipped: List[Dict[str, Any]] = []
        self.steps: int = 0
        self._colimit: Optional[FormalColimit] = None

    @property
    def last(self) -> int:
        return len(self.stages) - 1

    @property
    def length(self) -> int:
        return len(self.stages)

    def stage(self, i: int) -> CuSemigroup:
        return self.colimit().stage(i)

    def append(self, S: CuSemigroup, sigma: CuMorphism) -> int:
        """Add S with σ: S_last -> S; returns the new stage index."""
        if sigma.domain != self.stages[-1] or sigma.codomain != S:
            raise StructuralError(f"{sigma!r} does not extend stage {self.last} to {S.key}")
        self.stages.append(S)
        self.maps.append(sigma)
        self._colimit = None
        logger.debug(f"Stage {self.last}: {S.key} via {sigma.label}")
        return self.last

    def colimit(self) -> FormalColimit:
        if self._colimit is None or self._colimit.length != self.length:
            self._colimit = FormalColimit(self.stages, self.maps, f"{self.category.name}[{self.seed}]")
        return self._colimit

    def connecting(self, i: int, j: int) -> CuMorphism:
        return self.colimit().connecting(i, j)

    def identify(self, depth: int) -> Optional[IdentificationReport]:
        """Compare the prefix colimit with the category's closed form, if it has one."""
        found = self.category.identification(self.stages, self.maps)
        if found is None:
            return None
        target, stage_maps = found
        return identify_colimit(self.colimit(), target, stage_maps, depth)

    # ===== Certificates =====

    def recheck(self) -> List[int]:
        """Indices of ledger entries that no longer verify."""
        return [n for n, entry in enumerate(self.ledger) if not entry.recheck(self)]

    def demand_entry(self, demand: Demand) -> Optional[LedgerEntry]:
        for entry in self.ledger:
            if entry.demand == demand:
                return entry
        return None

    def failure_detail(self, entry: LedgerEntry) -> Optional[Dict[str, Any]]:
        F = basis_subset(entry.alpha.domain, entry.level)
        failure = comparison_failure(compose(entry.beta, entry.alpha), self.connecting(entry.stage, entry.target), F)
        if failure is None:
            return None
        S = entry.alpha.domain
        return {"low": S.encode(failure[0]), "high": S.encode(failure[1])}

    def summary(self) -> Dict[str, Any]:
        return {
            "category": self.category.name,
            "seed": self.seed,
            "steps": self.steps,
            "stages": self.length,
            "satisfied": len(self.ledger),
            "objects": len(self.objects),
            "skipped": len(self.skipped),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.summary(),
            "category_params": self.category.describe(),
            "chain": [S.describe() for S in self.stages],
            "maps": [sigma.describe() for sigma in self.maps],
            "ledger": [entry.to_dict() for entry in self.ledger],
            "object_ledger": [entry.to_dict() for entry in self.objects],
            "skipped_demands": self.skipped,
        }

    @staticmethod
    def from_dict(category: FraisseCategory, data: Dict[str, Any]) -> 'FraissePrefix':
        """Rebuild an archived prefix; the ledger is re-checked by `recheck`."""
        try:
            stages = [semigroup_from_descriptor(d) for d in data["chain"]]
            maps = [morphism_from_descriptor(d) for d in data["maps"]]
        except KeyError as e:
            raise RepresentationError(f"Archived prefix is missing {e}")
        if not stages:
            raise PreconditionError("Archived prefix has no stages")
        prefix = FraissePrefix(category, stages[0], data.get("seed", 0))
        for S, sigma in zip(stages[1:], maps):
            prefix.append(S, sigma)
        prefix.steps = data.get("steps", 0)
        prefix.skipped = list(data.get("skipped_demands", []))
        for raw in data.get("ledger", []):
            d = raw["demand"]
            prefix.ledger.append(LedgerEntry(
                demand=Demand(d["index"], d["stage"], d["morphism"], d["level"]),
                stage=raw["stage"],
                alpha=morphism_from_descriptor(raw["alpha"]),
                target=raw["target"],
                beta=morphism_from_descriptor(raw["beta"]),
                via=raw.get("via", "archive"),
            ))
        for raw in data.get("object_ledger", []):
            d = raw["demand"]
            prefix.objects.append(ObjectEntry(
                demand=Demand(d["index"], obj=d["object"]),
                obj=semigroup_from_descriptor(raw["object"]),
                stage=raw["stage"],
                hom=morphism_from_descriptor(raw["hom"]),
                via=raw.get("via", "archive"),
            ))
        return prefix

    def __repr__(self) -> str:
        return f"<FraissePrefix {self.category.name} stages={self.length} ledger={len(self.ledger)}>"
