"""Limits of d_Λ-Cauchy sequences and the pointwise/uniform comparison."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from ..core.morphism import CuMorphism
from ..core.subset import FiniteSubset
from ..limit.cauchy import LimitMorphism, cauchy_limit
from ..limit.sequence import MorphismSequence
from ..utils.codec import encode_number
from ..utils.errors import DiagnosticError, PreconditionError
from ..utils.logger import get_logger
from .bridge import bridge_eps_for_set
from .distance import d_G, d_Lambda
from .family import GeneratingFamily
from .paths import ZERO

logger = get_logger(__name__)


def _encoded(values: Optional[Sequence[Fraction]]) -> Optional[List[Any]]:
    return None if values is None else [encode_number(v) for v in values]


@dataclass
class MetricLimit:
    """A limit reached through the metric modulus.

    `to_limit` lists d_Λ(α_i, α) when the limit has a closed form; it need
    not tend to 0 for an infinite family.
    """
    limit: LimitMorphism
    steps: List[Fraction]
    tails: List[Fraction]
    to_limit: Optional[List[Fraction]] = None

    @property
    def converges_in_metric(self) -> Optional[bool]:
        """Whether d_Λ(α_i, α) decreases to 0 on the window; None without a closed form."""
        if self.to_limit is None:
            return None
        values = self.to_limit
        if values[-1] == ZERO:
            return True
        decreasing = all(b <= a for a, b in zip(values, values[1:]))
        return decreasing and values[-1] < values[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "limit": self.limit.label,
            "steps": _encoded(self.steps),
            "tails": _encoded(self.tails),
            "to_limit": _encoded(self.to_limit),
            "converges_in_metric": self.converges_in_metric,
        }


def d_lambda_cauchy_limit(
    seq: MorphismSequence,
    family: GeneratingFamily,
    depth: int,
    closed_form: Optional[CuMorphism] = None,
    threads: int = 1,
) -> MetricLimit:
    """The limit of a d_Λ-Cauchy sequence, through ε_F and the tail sums.

    i_F is the first index whose tail sum of consecutive distances falls
    below ε_F; by the triangle inequality every later pair is then within
    ε_F, hence ≃_F.
    """
    steps = [d_Lambda(seq.term(i), seq.term(i + 1), family, threads) for i in range(seq.horizon)]
    tails = [sum(steps[i:], ZERO) for i in range(seq.horizon + 1)]

    def modulus(F: FiniteSubset) -> int:
        eps = bridge_eps_for_set(F, family)
        index = next(i for i, tail in enumerate(tails) if tail < eps)
        if index >= seq.horizon:
            raise DiagnosticError(
                f"Tail sums of {seq.label} stay above ε_F = {eps} on the window",
                {"F": F.to_dict(), "eps": encode_number(eps), "horizon": seq.horizon},
            )
        return index

    metric_seq = MorphismSequence(
        seq.domain, seq.codomain, seq.term, modulus=modulus, horizon=seq.horizon, label=seq.label
    )
    limit = cauchy_limit(metric_seq, depth, closed_form=closed_form)
    to_limit = None
    if closed_form is not None:
        to_limit = [d_Lambda(seq.term(i), closed_form, family, threads) for i in range(seq.horizon + 1)]
    logger.info(
        f"Metric limit of {seq.label} over {family.name}",
        extra={"extra_fields": {"total": tails[0], "closed_form": closed_form is not None}},
    )
    return MetricLimit(limit, steps, tails, to_limit)


@dataclass
class FamilyConvergence:
    """Per-path distances d_G(α_i∘τ, α∘τ) next to the family sup d_Λ(α_i, α)."""
    family: str
    per_path: Dict[str, List[Fraction]] = field(default_factory=dict)
    sup: List[Fraction] = field(default_factory=list)

    def pointwise_last(self) -> Fraction:
        """max over τ of the last distance; small when every path converges."""
        return max((values[-1] for values in self.per_path.values()), default=ZERO)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "per_path": {k: _encoded(v) for k, v in self.per_path.items()},
            "sup": _encoded(self.sup),
        }


def lambda_fin_equivalence(terms: Sequence[CuMorphism], limit: CuMorphism, family: GeneratingFamily) -> FamilyConvergence:
    """Both readings of α_i -> α over a finite family, as data.

    For a finite family the per-path distances tend to 0 exactly when the
    sup does; for truncations of an infinite one the sup can stall.
    """
    if not terms:
        raise PreconditionError("No terms to compare")
    report = FamilyConvergence(family.name)
    for tau in family.paths:
        target = tau.push(limit)
        report.per_path[tau.label] = [d_G(tau.push(alpha), target) for alpha in terms]
    report.sup = [max(values[i] for values in report.per_path.values()) for i in range(len(terms))]
    return report
