"""Approximate intertwinings between inductive sequences and the maps they induce.

One-sided: α_i: S_i -> T_{φ(i)} with
    α_k ∘ σ_{i,k} ≃_F τ_{φ(j),φ(k)} ∘ α_j ∘ σ_{i,j}    for i_F <= j <= k.
Two-sided adds β_k: T_k -> S_{ψ(k)} with
    σ_{i,ψ(k)} ≃_F β_k ∘ τ_{φ(j),k} ∘ α_j ∘ σ_{i,j}    for j >= i_F, k >= φ(j)
and the symmetric condition on finite subsets of T_i.

Induced maps are evaluated on representatives: (i, x) goes to
(φ(j), α_j(σ_{i,j}(x))) at the certified index j. When the target carries
a closed-form identification, the per-stage limit of
ι_{φ(j)} ∘ α_j ∘ σ_{i,j} gives the closed-form value.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.comparison import comparison_failure, n_refinement
from ..core.morphism import CuMorphism, compose
from ..core.subset import FiniteSubset
from ..utils.errors import DiagnosticError, PreconditionError, StructuralError
from ..utils.logger import get_logger
from .cauchy import LimitMorphism, cauchy_limit
from .colimit import ColimitElement, FormalColimit, Verdict, colimit_leq
from .sequence import MorphismSequence

logger = get_logger(__name__)

NO_ROOM = "no diagram left to check"


@dataclass
class IntertwiningCertificate:
    """One ledger entry: the diagrams checked for the basis set of one stage."""
    kind: str
    stage: int
    size: int
    index: Optional[int]
    checked: int
    failure: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.index is not None

    @property
    def out_of_room(self) -> bool:
        """Unpassed only because the finite sequence ended, with no failing diagram."""
        return self.index is None and "j" not in (self.failure or {})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "stage": self.stage,
            "size": self.size,
            "index": self.index,
            "checked": self.checked,
            "failure": self.failure,
        }


def _strictly_increasing(values: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


class Intertwining:
    """Cross maps between two formal colimits, with a certificate ledger."""

    def __init__(
        self,
        source: FormalColimit,
        target: FormalColimit,
        alphas: Sequence[CuMorphism],
        phi: Sequence[int],
        betas: Optional[Sequence[CuMorphism]] = None,
        psi: Optional[Sequence[int]] = None,
        label: str = "intertwining",
    ) -> None:
        if len(alphas) != len(phi) or not alphas:
            raise StructuralError("Need one reindexing value per cross map")
        if not _strictly_increasing(phi):
            raise PreconditionError(f"φ = {list(phi)} is not strictly increasing")
        for i, alpha in enumerate(alphas):
            if alpha.domain != source.stage(i) or alpha.codomain != target.stage(phi[i]):
                raise StructuralError(f"Cross map {i} is {alpha!r}")
        if (betas is None) != (psi is None):
            raise StructuralError("β and ψ come together")
        if betas is not None:
            if len(betas) != len(psi) or not betas:
                raise StructuralError("Need one reindexing value per backward map")
            if not _strictly_increasing(psi):
                raise PreconditionError(f"ψ = {list(psi)} is not strictly increasing")
            for k, beta in enumerate(betas):
                if beta.domain != target.stage(k) or beta.codomain != source.stage(psi[k]):
                    raise StructuralError(f"Backward map {k} is {beta!r}")
        self.source: FormalColimit = source
        self.target: FormalColimit = target
        self.alphas: List[CuMorphism] = list(alphas)
        self.phi: List[int] = list(phi)
        self.betas: Optional[List[CuMorphism]] = list(betas) if betas is not None else None
        self.psi: Optional[List[int]] = list(psi) if psi is not None else None
        self.label: str = label
        self.ledger: List[IntertwiningCertificate] = []

    @property
    def two_sided(self) -> bool:
        return self.betas is not None

    @property
    def length(self) -> int:
        return len(self.alphas)

    def reversed(self) -> 'Intertwining':
        """The same data read from T to S; needs the backward maps."""
        if not self.two_sided:
            raise PreconditionError(f"{self.label} is one-sided")
        flipped = Intertwining(self.target, self.source, self.betas, self.psi, self.alphas, self.phi, f"{self.label}^-1")
        flipped.ledger = self.ledger
        return flipped

    # ===== Diagrams =====

    def forward_pair(self, i: int, j: int, k: int) -> Tuple[CuMorphism, CuMorphism]:
        """(α_k ∘ σ_{i,k}, τ_{φ(j),φ(k)} ∘ α_j ∘ σ_{i,j})."""
        left = compose(self.alphas[k], self.source.connecting(i, k))
        right = compose(
            self.target.connecting(self.phi[j], self.phi[k]),
            compose(self.alphas[j], self.source.connecting(i, j)),
        )
        return left, right

    def round_trip_pair(self, i: int, j: int, k: int) -> Tuple[CuMorphism, CuMorphism]:
        """(σ_{i,ψ(k)}, β_k ∘ τ_{φ(j),k} ∘ α_j ∘ σ_{i,j})."""
        left = self.source.connecting(i, self.psi[k])
        right = compose(
            self.betas[k],
            compose(self.target.connecting(self.phi[j], k), compose(self.alphas[j], self.source.connecting(i, j))),
        )
        return left, right

    def forward_diagrams(self, i: int) -> Iterator[Tuple[int, int]]:
        for j in range(i, self.length):
            for k in range(j + 1, self.length):
                yield j, k

    def round_trip_diagrams(self, i: int) -> Iterator[Tuple[int, int]]:
        for j in range(i, self.length):
            for k in range(self.phi[j], len(self.betas)):
                if i <= self.psi[k] <= self.source.last:
                    yield j, k

    # ===== Certificates =====

    def _certify(self, kind: str, i: int, F: FiniteSubset) -> IntertwiningCertificate:
        if kind == "forward":
            diagrams, pair = list(self.forward_diagrams(i)), self.forward_pair
        else:
            diagrams, pair = list(self.round_trip_diagrams(i)), self.round_trip_pair
        checked = 0
        index = i
        failure: Optional[Dict[str, Any]] = None
        # latest failing j decides the index
        for j, k in sorted(diagrams, reverse=True):
            if j < index:
                break
            checked += 1
            found = comparison_failure(*pair(i, j, k), F)
            if found is not None:
                index = j + 1
                failure = {"j": j, "k": k, "pair": [F.host.encode(found[0]), F.host.encode(found[1])]}
                break
        if not any(j >= index for j, _ in diagrams):
            cert = IntertwiningCertificate(kind, i, len(F), None, checked, failure or {"reason": NO_ROOM})
        else:
            cert = IntertwiningCertificate(kind, i, len(F), index, checked, failure)
        self.ledger.append(cert)
        logger.debug(
            f"{kind} certificate for stage {i} of {self.label}",
            extra={"extra_fields": {"index": cert.index, "checked": checked}},
        )
        return cert

    def certify_forward(self, i: int, F: FiniteSubset) -> IntertwiningCertificate:
        if not 0 <= i < self.length:
            raise DiagnosticError(f"No cross map at stage {i} of {self.label}", {"stage": i, "reason": NO_ROOM})
        return self._certify("forward", i, F)

    def certify_round_trip(self, i: int, F: FiniteSubset) -> IntertwiningCertificate:
        if not self.two_sided:
            raise PreconditionError(f"{self.label} is one-sided")
        if not 0 <= i < self.length:
            raise DiagnosticError(f"No cross map at stage {i} of {self.label}", {"stage": i, "reason": NO_ROOM})
        return self._certify("round_trip", i, F)

    def ledger_dicts(self) -> List[Dict[str, Any]]:
        return [c.to_dict() for c in self.ledger]


def stage_set(C: FormalColimit, i: int, depth: int, refine: int = 1) -> FiniteSubset:
    """B_depth of stage i, n-refined when refine > 1."""
    F = FiniteSubset.of(C.stage(i), C.stage(i).basis(depth))
    return n_refinement(F, refine) if refine > 1 else F


class InducedMorphism:
    """The map between colimits induced by a one-sided intertwining."""

    def __init__(self, intertwining: Intertwining, depth: int, refine: int = 1) -> None:
        self.intertwining: Intertwining = intertwining
        self.depth: int = depth
        self.refine: int = refine
        self.source: FormalColimit = intertwining.source
        self.target: FormalColimit = intertwining.target
        self._index: Dict[int, int] = {}
        self._limits: Dict[int, LimitMorphism] = {}

    @property
    def label(self) -> str:
        return f"induced({self.intertwining.label})"

    def certified_index(self, i: int) -> int:
        if i not in self._index:
            cert = self.intertwining.certify_forward(i, stage_set(self.source, i, self.depth, self.refine))
            if not cert.passed:
                detail: Dict[str, Any] = {"certificate": cert.to_dict()}
                if cert.out_of_room:
                    detail["reason"] = NO_ROOM
                raise DiagnosticError(f"Missing certificate for stage {i} of {self.intertwining.label}", detail)
            self._index[i] = cert.index
        return self._index[i]

    def stage_map(self, i: int) -> Tuple[int, CuMorphism]:
        """(φ(j), α_j ∘ σ_{i,j}) at the certified index j."""
        j = self.certified_index(i)
        I = self.intertwining
        return I.phi[j], compose(I.alphas[j], self.source.connecting(i, j))

    def represent(self, a: ColimitElement) -> ColimitElement:
        i, x = a
        k, alpha = self.stage_map(i)
        return k, alpha.apply(x)

    def stage_limit(self, i: int) -> LimitMorphism:
        """lim_j ι_{φ(j)} ∘ α_j ∘ σ_{i,j}; needs an identified target."""
        identified = self.target.identification
        if identified is None:
            raise PreconditionError(f"{self.target.label} has no closed-form identification")
        if i not in self._limits:
            I = self.intertwining
            start = self.certified_index(i)

            def term(offset: int) -> CuMorphism:
                j = min(start + offset, I.length - 1)
                return compose(identified.stage_maps(I.phi[j]), compose(I.alphas[j], self.source.connecting(i, j)))

            horizon = max(I.length - 1 - start, 1)
            seq = MorphismSequence(self.source.stage(i), identified.target, term, horizon=horizon, label=f"{self.label}@{i}")
            self._limits[i] = cauchy_limit(seq, self.depth)
        return self._limits[i]

    def value(self, a: ColimitElement) -> Any:
        """Closed-form image of a source element."""
        i, x = a
        return self.stage_limit(i).apply(x)


def _leq(C: FormalColimit, a: ColimitElement, b: ColimitElement) -> bool:
    if C.identification is not None:
        identified = C.identification
        return identified.target.leq(identified.value(a), identified.value(b))
    return colimit_leq(C, a, b) == Verdict.YES


def _stages_to_check(I: Intertwining, depth: int) -> List[int]:
    return list(range(min(depth, I.length - 2) + 1))


def one_sided_induced(I: Intertwining, depth: int, refine: int = 1) -> InducedMorphism:
    """The induced map, with α∘σ_{i,∞} ≃_F τ_{φ(j),∞}∘α_j∘σ_{i,j} checked on B_depth."""
    if I.length < 2:
        raise DiagnosticError(f"{I.label} is too short to certify anything", {"length": I.length})
    alpha = InducedMorphism(I, depth, refine)
    for i in _stages_to_check(I, depth):
        F = stage_set(I.source, i, depth)
        start = alpha.certified_index(i)
        for j in range(start, I.length):
            for low, high in F.ll_pairs:
                approx_low = (I.phi[j], I.alphas[j].apply(I.source.connecting(i, j).apply(low)))
                approx_high = (I.phi[j], I.alphas[j].apply(I.source.connecting(i, j).apply(high)))
                if not (_leq(I.target, alpha.represent((i, low)), approx_high) and _leq(I.target, approx_low, alpha.represent((i, high)))):
                    raise DiagnosticError(
                        f"Induced map of {I.label} fails to commute at stage {i}, index {j}",
                        {"F": F.to_dict(), "pair": [F.host.encode(low), F.host.encode(high)], "j": j},
                    )
    logger.info(
        f"Induced map of {I.label} at depth {depth}",
        extra={"extra_fields": {"stages": len(alpha._index), "ledger": len(I.ledger)}},
    )
    return alpha


@dataclass
class InducedPair:
    alpha: InducedMorphism
    beta: InducedMorphism
    stages_source: List[int] = field(default_factory=list)
    stages_target: List[int] = field(default_factory=list)
    # stages left uncertified because the sequences end
    out_of_room: Dict[str, List[int]] = field(default_factory=lambda: {"source": [], "target": []})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha.label,
            "beta": self.beta.label,
            "stages_source": self.stages_source,
            "stages_target": self.stages_target,
            "out_of_room": self.out_of_room,
            "ledger": self.alpha.intertwining.ledger_dicts(),
        }


def _round_trip_check(first: InducedMorphism, second: InducedMorphism, depth: int) -> Tuple[List[int], List[int]]:
    """Stages i with second∘first ≃_F id on B_depth(S_i), then the stages without room.

    A failing diagram raises; running out of stages ends the walk.
    """
    C = first.source
    checked: List[int] = []
    stages = list(range(min(depth, first.intertwining.length - 2) + 1))
    for i in stages:
        F = stage_set(C, i, depth)
        try:
            round_trip = {x: second.represent(first.represent((i, x))) for x in F}
        except DiagnosticError as err:
            if not checked or err.detail.get("reason") != NO_ROOM:
                raise
            return checked, stages[i:]
        for low, high in F.ll_pairs:
            if not (_leq(C, round_trip[low], (i, high)) and _leq(C, (i, low), round_trip[high])):
                raise DiagnosticError(
                    f"Round trip through {first.intertwining.label} is not the identity at stage {i}",
                    {"F": F.to_dict(), "pair": [F.host.encode(low), F.host.encode(high)]},
                )
        checked.append(i)
    return checked, []


def two_sided_induced(I: Intertwining, depth: int) -> InducedPair:
    """Mutually inverse induced maps, certified through 2-refinements.

    A failing round-trip diagram at any stage raises with its certificate.
    Stages past 0 that only run out of diagrams go to `out_of_room`.
    """
    if not I.two_sided:
        raise PreconditionError(f"{I.label} is one-sided")
    back = I.reversed()
    room: Dict[str, List[int]] = {"source": [], "target": []}
    for side, direction in (("source", I), ("target", back)):
        for i in _stages_to_check(direction, depth):
            cert = direction.certify_round_trip(i, stage_set(direction.source, i, depth, refine=2))
            if cert.passed:
                continue
            if cert.out_of_room and i > 0:
                room[side].append(i)
                continue
            raise DiagnosticError(
                f"Certificate gap in {direction.label} at stage {i}",
                {"certificate": cert.to_dict()},
            )
    alpha = one_sided_induced(I, depth, refine=2)
    beta = one_sided_induced(back, depth, refine=2)
    pair = InducedPair(alpha, beta)
    pair.stages_source, source_room = _round_trip_check(alpha, beta, depth)
    pair.stages_target, target_room = _round_trip_check(beta, alpha, depth)
    pair.out_of_room = {
        "source": sorted(set(room["source"]) | set(source_room)),
        "target": sorted(set(room["target"]) | set(target_room)),
    }
    logger.info(
        f"Two-sided intertwining {I.label} induces inverse maps",
        extra={"extra_fields": {"source_stages": pair.stages_source, "out_of_room": pair.out_of_room}},
    )
    return pair
