"""Bridges between d_Λ and finite-set comparison.

For a pair x' << x a squeeze is a path τ, a number of copies k, a start t
and a margin r > 0 with k·τ_t <= x and x' <= k·τ_{t+r}. If d_Λ(α, β) < r
then α(x') <= α(k·τ_{t+r}) <= β(k·τ_t) <= β(x), and symmetrically, so the
least margin over the pairs of F is an admissible ε_F.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..core.semigroup import Element
from ..core.subset import FiniteSubset
from ..utils.codec import encode_number
from ..utils.errors import DiagnosticError, PreconditionError, StructuralError
from ..utils.logger import get_logger
from .family import GeneratingFamily
from .paths import ONE, ZERO

logger = get_logger(__name__)

DEFAULT_MESH = 4
DEFAULT_COPIES = 4


@dataclass(frozen=True)
class Squeeze:
    low: Any
    high: Any
    path: int
    copies: int
    start: Fraction
    margin: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": [self.low, self.high],
            "path": self.path,
            "copies": self.copies,
            "start": encode_number(self.start),
            "margin": encode_number(self.margin),
        }


def find_squeeze(
    family: GeneratingFamily,
    low: Element,
    high: Element,
    mesh: int = DEFAULT_MESH,
    max_copies: int = DEFAULT_COPIES,
) -> Optional[Squeeze]:
    """The squeeze of largest margin over critical points and the dyadic mesh."""
    S = family.target
    grid = {Fraction(k, 2 ** mesh) for k in range(2 ** mesh + 1)}
    if low == S.zero:
        return Squeeze(S.encode(low), S.encode(high), 0, 1, ONE, ONE)
    best: Optional[Squeeze] = None
    for index, tau in enumerate(family.paths):
        ts = sorted(grid | set(tau.critical_points()))
        values = {t: tau.value(t) for t in ts}
        for copies in range(1, max_copies + 1):
            scaled = {t: S.multiple(copies, v) for t, v in values.items()}
            reach = [t for t in ts if S.leq(low, scaled[t])]
            if not reach:
                continue
            last = reach[-1]
            for t in ts:
                if t >= last:
                    break
                if S.leq(scaled[t], high):
                    margin = last - t
                    if best is None or margin > best.margin:
                        best = Squeeze(S.encode(low), S.encode(high), index, copies, t, margin)
                    break
    return best


def squeeze_certificates(F: FiniteSubset, family: GeneratingFamily, mesh: int = DEFAULT_MESH) -> List[Squeeze]:
    """One squeeze per way-below pair of F; a pair without one is a diagnostic."""
    if F.host != family.target:
        raise StructuralError(f"F lives in {F.host.key}, the family in {family.target.key}")
    found: List[Squeeze] = []
    for low, high in F.ll_pairs:
        squeeze = find_squeeze(family, low, high, mesh)
        if squeeze is None:
            raise DiagnosticError(
                f"No squeeze for ({F.host.encode(low)}, {F.host.encode(high)}) in {family.name}",
                {"pair": [F.host.encode(low), F.host.encode(high)], "family": family.name, "mesh": mesh},
            )
        found.append(squeeze)
    return found


def bridge_eps_for_set(F: FiniteSubset, family: GeneratingFamily, mesh: int = DEFAULT_MESH) -> Fraction:
    """ε_F with d_Λ(α, β) < ε_F implying α ≃_F β."""
    margins = [s.margin for s in squeeze_certificates(F, family, mesh)]
    eps = min(margins, default=ONE)
    logger.debug(f"Bridge ε_F over {family.name}", extra={"extra_fields": {"eps": eps, "pairs": len(margins)}})
    return eps


def bridge_set_for_eps(eps: Any, family: GeneratingFamily) -> FiniteSubset:
    """F_ε = { τ(1_{(t_i,1]}), τ(1_{(t_i+ε/2,1]}) } over a partition of mesh below ε/2."""
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"ε must be positive, got {eps}")
    n = int(2 / eps) + 1
    half = eps / 2
    ts = [Fraction(i, n) for i in range(n + 1)]
    elements = [tau.value(t + shift) for tau in family.paths for t in ts for shift in (ZERO, half)]
    return FiniteSubset.of(family.target, elements)
