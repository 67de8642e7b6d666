"""Formal inductive colimits and their identification with closed forms.

An element of the colimit is a pair (stage index, stage element). The
order is decided to a depth: "yes" needs a stage k with
σ_{i,k}(x) <= σ_{j,k}(y), "no" needs an identification with a closed form
whose order refutes the inequality, anything else is "unknown".
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from threading import Lock
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..core.morphism import CuMorphism, IdentityMorphism, compose
from ..core.semigroup import CuSemigroup, Element
from ..utils.errors import DiagnosticError, PreconditionError, StructuralError
from ..utils.logger import get_logger

logger = get_logger(__name__)

ColimitElement = Tuple[int, Element]
StageMaps = Union[Sequence[CuMorphism], Callable[[int], CuMorphism]]


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class Identification:
    """Stage maps ι_i: S_i -> target commuting with the connecting maps."""
    target: CuSemigroup
    stage_maps: Callable[[int], CuMorphism]

    def value(self, a: ColimitElement) -> Element:
        i, x = a
        return self.stage_maps(i).apply(x)


def _as_callable(stage_maps: StageMaps) -> Callable[[int], CuMorphism]:
    if callable(stage_maps):
        return stage_maps
    items = list(stage_maps)
    return lambda i: items[i]


class FormalColimit:
    """S_0 -> S_1 -> ... with cached compositions σ_{i,j}."""

    def __init__(self, stages: Sequence[CuSemigroup], maps: Sequence[CuMorphism], label: str = "colim") -> None:
        if not stages:
            raise PreconditionError("A colimit needs at least one stage")
        if len(maps) != len(stages) - 1:
            raise StructuralError(f"{len(stages)} stages need {len(stages) - 1} connecting maps, got {len(maps)}")
        for i, sigma in enumerate(maps):
            if sigma.domain != stages[i] or sigma.codomain != stages[i + 1]:
                raise StructuralError(f"Connecting map {i} is {sigma!r}, expected {stages[i].key} -> {stages[i + 1].key}")
        self.stages: List[CuSemigroup] = list(stages)
        self.maps: List[CuMorphism] = list(maps)
        self.label: str = label
        self.identification: Optional[Identification] = None
        self._connecting: Dict[Tuple[int, int], CuMorphism] = {}
        self._lock = Lock()

    @property
    def length(self) -> int:
        return len(self.stages)

    @property
    def last(self) -> int:
        return len(self.stages) - 1

    def stage(self, i: int) -> CuSemigroup:
        if not 0 <= i < len(self.stages):
            raise PreconditionError(f"Stage {i} is outside {self.label} (length {self.length})")
        return self.stages[i]

    def connecting(self, i: int, j: int) -> CuMorphism:
        """σ_{i,j} for i <= j."""
        if j < i:
            raise PreconditionError(f"No connecting map from stage {i} back to {j}")
        self.stage(j)
        if i == j:
            return IdentityMorphism(self.stages[i])
        key = (i, j)
        cached = self._connecting.get(key)
        if cached is not None:
            return cached
        result = compose(self.maps[j - 1], self.connecting(i, j - 1))
        with self._lock:
            self._connecting.setdefault(key, result)
        return self._connecting[key]

    def push(self, a: ColimitElement, k: int) -> Element:
        i, x = a
        return self.connecting(i, k).apply(x)

    def subsequence(self, indices: Sequence[int], label: Optional[str] = None) -> 'FormalColimit':
        """Same colimit through the stages at the given increasing indices."""
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise PreconditionError(f"Indices {list(indices)} are not strictly increasing")
        stages = [self.stage(i) for i in indices]
        maps = [self.connecting(a, b) for a, b in zip(indices, indices[1:])]
        sub = FormalColimit(stages, maps, label or f"{self.label}|sub")
        if self.identification is not None:
            parent = self.identification
            sub.identification = Identification(parent.target, lambda k: parent.stage_maps(indices[k]))
        return sub

    def stage_witness(self, a: ColimitElement, b: ColimitElement, depth: Optional[int] = None) -> Optional[int]:
        """Least stage k with σ_{i,k}(x) <= σ_{j,k}(y), searched up to stage `depth`."""
        start = max(a[0], b[0])
        stop = self.last if depth is None else min(self.last, max(depth, start))
        for k in range(start, stop + 1):
            if self.stages[k].leq(self.push(a, k), self.push(b, k)):
                return k
        return None

    def describe(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "stages": [S.describe() for S in self.stages],
            "maps": [sigma.describe() for sigma in self.maps],
        }

    def __repr__(self) -> str:
        return f"<FormalColimit {self.label} length={self.length}>"


def colimit_make(stages: Sequence[CuSemigroup], maps: Sequence[CuMorphism], label: str = "colim") -> FormalColimit:
    return FormalColimit(stages, maps, label)


def colimit_leq(C: FormalColimit, a: ColimitElement, b: ColimitElement, depth: Optional[int] = None) -> Verdict:
    """Three-valued order; "no" only through an attached identification."""
    for i, x in (a, b):
        C.stage(i).require(x)
    witness = C.stage_witness(a, b, depth)
    identified = C.identification
    if identified is not None:
        T = identified.target
        closed = T.leq(identified.value(a), identified.value(b))
        if witness is not None and not closed:
            raise DiagnosticError(
                f"Stage {witness} of {C.label} says yes, the closed form says no",
                {"a": [a[0], C.stage(a[0]).encode(a[1])], "b": [b[0], C.stage(b[0]).encode(b[1])]},
            )
        if not closed:
            return Verdict.NO
    if witness is not None:
        return Verdict.YES
    return Verdict.UNKNOWN


# ===== Identification =====

@dataclass
class IdentificationReport:
    """Agreement of the colimit with a closed form on the depth basis."""
    colimit: str
    target: str
    depth: int
    checked: int = 0
    order_mismatches: List[Dict[str, Any]] = field(default_factory=list)
    sum_failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.order_mismatches and not self.sum_failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "colimit": self.colimit,
            "target": self.target,
            "depth": self.depth,
            "checked": self.checked,
            "passed": self.passed,
            "order_mismatches": self.order_mismatches,
            "sum_failures": self.sum_failures,
        }


def _check_commutation(C: FormalColimit, iota: Callable[[int], CuMorphism], depth: int) -> None:
    for i in range(C.last):
        S = C.stages[i]
        for x in S.basis(depth):
            here = iota(i).apply(x)
            there = iota(i + 1).apply(C.maps[i].apply(x))
            if here != there:
                raise PreconditionError(
                    f"Stage maps of {C.label} do not commute at stage {i} on {S.encode(x)!r}"
                )


def identify_colimit(C: FormalColimit, target: CuSemigroup, stage_maps: StageMaps, depth: int) -> IdentificationReport:
    """Compare the colimit order and sums with the target on the depth basis.

    Stages 0..min(depth, last - 1) supply the elements; the later stages
    only provide room for witnesses. On a pass the identification is
    attached to C, which enables "no" answers from `colimit_leq`.
    """
    iota = _as_callable(stage_maps)
    for i in range(C.length):
        alpha = iota(i)
        if alpha.domain != C.stages[i] or alpha.codomain != target:
            raise StructuralError(f"Stage map {i} is {alpha!r}, expected {C.stages[i].key} -> {target.key}")
    _check_commutation(C, iota, depth)

    top = min(depth, max(C.last - 1, 0))
    elements: List[ColimitElement] = [(i, x) for i in range(top + 1) for x in C.stages[i].basis(depth)]
    report = IdentificationReport(colimit=C.label, target=target.key, depth=depth)

    def enc(a: ColimitElement) -> List[Any]:
        return [a[0], C.stages[a[0]].encode(a[1])]

    for a, b in product(elements, elements):
        report.checked += 1
        in_target = target.leq(iota(a[0]).apply(a[1]), iota(b[0]).apply(b[1]))
        witness = C.stage_witness(a, b)
        if in_target != (witness is not None):
            report.order_mismatches.append({"a": enc(a), "b": enc(b), "target": in_target, "witness": witness})
        if a[0] == b[0]:
            S = C.stages[a[0]]
            total = iota(a[0]).apply(S.add(a[1], b[1]))
            expected = target.add(iota(a[0]).apply(a[1]), iota(b[0]).apply(b[1]))
            if total != expected:
                report.sum_failures.append({"a": enc(a), "b": enc(b), "image": target.encode(total), "sum": target.encode(expected)})

    if report.passed:
        C.identification = Identification(target, iota)
    logger.info(
        f"Identification of {C.label} with {target.key}: {'pass' if report.passed else 'fail'}",
        extra={"extra_fields": {
            "checked": report.checked,
            "order_mismatches": len(report.order_mismatches),
            "sum_failures": len(report.sum_failures),
        }},
    )
    return report
