"""Limits of Cauchy sequences of morphisms.

The limit is evaluated on a basis element s through a <<-chain f_0 << f_1
<< ... with supremum s: φ(n) is the running maximum of the Cauchy indices
of B_0..B_n, ψ(l) the least level containing f_0..f_l, and the value is
sup_l α_{φ(ψ(l))}(f_l).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..core.morphism import CuMorphism
from ..core.semigroup import CuSemigroup, Element, interpolate_checked
from ..core.subset import FiniteSubset
from ..utils.errors import DiagnosticError, PreconditionError, StructuralError
from ..utils.logger import get_logger
from .sequence import MorphismSequence

logger = get_logger(__name__)


@dataclass
class PairConvergence:
    """First index from which α_j(x') <= α(x) and α(x') <= α_j(x) hold up to the horizon."""
    low: Any
    high: Any
    index: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        return {"pair": [self.low, self.high], "index": self.index}


@dataclass
class ConvergenceCertificate:
    subject: str
    horizon: int
    pairs: List[PairConvergence] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.index is not None for p in self.pairs)

    @property
    def index(self) -> Optional[int]:
        """One index that works for every pair, when all pairs converge."""
        if not self.passed:
            return None
        return max((p.index for p in self.pairs), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "horizon": self.horizon,
            "passed": self.passed,
            "pairs": [p.to_dict() for p in self.pairs],
        }


def convergence_certificate(seq: MorphismSequence, limit: CuMorphism, F: FiniteSubset) -> ConvergenceCertificate:
    """Eventual two-sided inequalities for every x' << x in F, found on the window."""
    T = seq.codomain
    S = F.host
    report = ConvergenceCertificate(subject=f"{seq.label} -> {limit.label}", horizon=seq.horizon)
    for low, high in F.ll_pairs:
        first: Optional[int] = None
        for j in range(seq.horizon, -1, -1):
            alpha_j = seq.term(j)
            if T.leq(alpha_j.apply(low), limit.apply(high)) and T.leq(limit.apply(low), alpha_j.apply(high)):
                first = j
            else:
                break
        report.pairs.append(PairConvergence(S.encode(low), S.encode(high), first))
    return report


class LimitMorphism(CuMorphism):
    """α = lim α_j on a countably-based domain.

    `exact` values are either closed-form or taken where α_j(s) is constant
    on the whole tail of the window; anything else is the depth-bounded
    supremum over the chain prefix and is listed in `approximate`.
    """

    def __init__(
        self,
        seq: MorphismSequence,
        depth: int,
        phi: List[int],
        presentation: CuSemigroup,
        closed_form: Optional[CuMorphism] = None,
    ) -> None:
        super().__init__(seq.domain, seq.codomain, f"lim {seq.label}")
        self.seq: MorphismSequence = seq
        self.depth: int = depth
        self.phi: List[int] = phi
        self.presentation: CuSemigroup = presentation
        self.closed_form: Optional[CuMorphism] = closed_form
        self.approximate: set = set()
        self._values: Dict[Element, Element] = {}

    @property
    def exact(self) -> bool:
        return not self.approximate

    def _psi(self, chain: List[Element]) -> List[Tuple[int, Element]]:
        """(ψ(l), f_l) for the longest prefix that sits inside B_depth."""
        steps: List[Tuple[int, Element]] = []
        level = 0
        for f in chain:
            found = self.presentation.level_of(f, self.depth)
            if found is None:
                break
            level = max(level, found)
            steps.append((level, f))
        return steps

    def evaluate_with_chain(self, chain: List[Element]) -> Element:
        """sup over the chain prefix of α_{φ(ψ(l))}(f_l); the images must form a chain."""
        T = self.codomain
        values = [self.seq.term(self.phi[level]).apply(f) for level, f in self._psi(chain)]
        if not values:
            raise PreconditionError(f"No element of the chain lies in B_{self.depth}")
        best = values[0]
        for value in values[1:]:
            if T.leq(best, value):
                best = value
            elif not T.leq(value, best):
                raise DiagnosticError(
                    f"Images along the chain are not comparable in {T.key}",
                    {
                        "chain": [self.domain.encode(f) for f in chain],
                        "pair": [T.encode(best), T.encode(value)],
                    },
                )
        return best

    def stable_value(self, s: Element) -> Optional[Element]:
        """α_j(s) when it is constant for j from φ(depth) up to the horizon."""
        start = self.phi[-1]
        if start > self.seq.horizon:
            return None
        first = self.seq.term(start).apply(s)
        for j in range(start + 1, self.seq.horizon + 1):
            if self.seq.term(j).apply(s) != first:
                return None
        return first

    def apply(self, x: Element) -> Element:
        if self.closed_form is not None:
            return self.closed_form.apply(x)
        if x in self._values:
            return self._values[x]
        value = self.stable_value(x)
        if value is None:
            chain = self.presentation.approximating_chain(x, self.depth + 1)
            value = self.evaluate_with_chain(chain)
            self.approximate.add(x)
        self._values[x] = value
        return value

    def second_chain(self, s: Element) -> List[Element]:
        """g_l with f_l << g_l << f_{l+1}: another chain with supremum s."""
        S = self.presentation
        chain = S.approximating_chain(s, self.depth + 2)
        if chain[0] == chain[-1]:
            return chain[:-1]
        return [interpolate_checked(S, a, b) for a, b in zip(chain, chain[1:])]

    def chain_independent(self, s: Element) -> bool:
        """The construction gives the same value along two different chains."""
        first = self.evaluate_with_chain(self.presentation.approximating_chain(s, self.depth + 1))
        second = self.evaluate_with_chain(self.second_chain(s))
        return first == second

    def describe(self) -> Dict[str, Any]:
        if self.closed_form is not None:
            return self.closed_form.describe()
        return {"kind": "limit", "label": self.label, "depth": self.depth, "phi": self.phi}


def cauchy_phi(seq: MorphismSequence, presentation: CuSemigroup, depth: int) -> List[int]:
    """Running maximum of the Cauchy indices of B_0, ..., B_depth."""
    phi: List[int] = []
    running = 0
    for n in range(depth + 1):
        F = FiniteSubset.of(seq.domain, presentation.basis(n))
        running = max(running, seq.modulus_for(F))
        phi.append(running)
    return phi


def cauchy_limit(
    seq: MorphismSequence,
    depth: int,
    closed_form: Optional[CuMorphism] = None,
    basis: Optional[CuSemigroup] = None,
) -> LimitMorphism:
    """The limit of a Cauchy sequence, evaluated on B_depth.

    `basis` is another presentation of the domain (same carrier, another
    basis enumeration). A `closed_form` candidate is accepted only after its
    convergence certificate passes on B_depth.
    """
    if depth < 0:
        raise PreconditionError(f"Negative depth {depth}")
    presentation = basis or seq.domain
    if presentation != seq.domain:
        raise StructuralError(f"{presentation.key} is not a presentation of {seq.domain.key}")
    phi = cauchy_phi(seq, presentation, depth)

    if closed_form is not None:
        if closed_form.domain != seq.domain or closed_form.codomain != seq.codomain:
            raise StructuralError(f"{closed_form.label} does not share the sequence's domain and codomain")
        F = FiniteSubset.of(seq.domain, presentation.basis(depth))
        certificate = convergence_certificate(seq, closed_form, F)
        if not certificate.passed:
            raise DiagnosticError(
                f"{closed_form.label} is not the limit of {seq.label} on B_{depth}",
                {"F": F.to_dict(), "certificate": certificate.to_dict()},
            )

    limit = LimitMorphism(seq, depth, phi, presentation, closed_form)
    logger.info(
        f"Limit of {seq.label} at depth {depth}",
        extra={"extra_fields": {"phi": phi, "closed_form": closed_form is not None}},
    )
    return limit
