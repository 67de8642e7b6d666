"""Near amalgamation for morphisms of Lsc([0,1], N̄) induced by PL surjections.

For F made of functions constant on the open cells of the 1/n partition,
morphisms induced by maps at sup distance below 1/n agree on F. So both
maps are normalised at the endpoints, approximated within 1/(2n) by maps
without flats, and joined by mountain climbing.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Any, Dict, List, Optional

from ..core.comparison import comparison_failure
from ..core.subset import FiniteSubset
from ..instances.steplsc import IntervalLsc, interval_indicator
from ..utils.errors import DiagnosticError, PreconditionError
from ..utils.logger import get_logger
from .approx import endpoint_normalizer, rational_peak_approx
from .mountain import mountain_climb
from .plmap import ONE, ZERO, PLMap, identity_map

logger = get_logger(__name__)


def grid_family_set(n: int) -> FiniteSubset:
    """Indicators of the open intervals spanned by consecutive cells of the 1/n partition.

    Each one is constant on every open cell; together with 0 and 1 they
    form the finite part of F_n used by the amalgamation checks.
    """
    if n < 1:
        raise PreconditionError(f"Grid size must be >= 1, got {n}")
    S = IntervalLsc()
    elements = [S.zero]
    for k in range(n):
        for l in range(k + 1, n + 1):
            a, b = Fraction(k, n), Fraction(l, n)
            elements.append(interval_indicator(a, b, left_closed=a == ZERO, right_closed=b == ONE))
    return FiniteSubset.of(S, elements)


def grid_of(F: FiniteSubset) -> int:
    """Least n such that every element of F breaks only at multiples of 1/n."""
    n = 1
    for f in F:
        for t in f.breaks:
            n = lcm(n, Fraction(t).denominator)
    return n


@dataclass
class KPAmalgam:
    """β_i = Lsc(u_i ∘ g_i) with β_1 ∘ α_1 ≃_F β_2 ∘ α_2."""
    beta1: Any
    beta2: Any
    g1: PLMap
    g2: PLMap
    eps: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g1": self.beta1.h.encode(),
            "g2": self.beta2.h.encode(),
            "eps": {"num": self.eps.numerator, "den": self.eps.denominator},
        }


def kp_amalgamate(alpha1: Any, alpha2: Any, F: FiniteSubset, n: Optional[int] = None) -> KPAmalgam:
    from ..hom.pl_induced import PLInducedMorphism

    for alpha in (alpha1, alpha2):
        if not isinstance(alpha, PLInducedMorphism):
            raise PreconditionError(f"{alpha.label} is not induced by a PL surjection")
    n = n or grid_of(F)
    eps = Fraction(1, n)
    f1, f2 = alpha1.h, alpha2.h
    if f1 == f2:
        identity = identity_map()
        beta = PLInducedMorphism(identity)
        return KPAmalgam(beta, PLInducedMorphism(identity), identity, identity, eps)

    u1, u2 = endpoint_normalizer(f1), endpoint_normalizer(f2)
    h1 = rational_peak_approx(f1.compose(u1), eps / 2)
    h2 = rational_peak_approx(f2.compose(u2), eps / 2)
    g1, g2 = mountain_climb(h1, h2)
    beta1 = PLInducedMorphism(u1.compose(g1))
    beta2 = PLInducedMorphism(u2.compose(g2))

    failure = comparison_failure(beta1.compose(alpha1), beta2.compose(alpha2), F)
    if failure is not None:
        low, high = failure
        raise DiagnosticError(
            "Amalgamation certificate failed",
            {"F": F.to_dict(), "pair": [F.host.encode(low), F.host.encode(high)], "eps": str(eps)},
        )
    logger.debug(
        f"K_P amalgamation over a grid of size {n}",
        extra={"extra_fields": {"g1_breaks": len(g1.xs), "g2_breaks": len(g2.xs), "eps": eps}},
    )
    return KPAmalgam(beta1, beta2, g1, g2, eps)


def enumerate_pl_surjections(max_pieces: int, denominator: int) -> List[PLMap]:
    """Rational PL surjections without flats through evenly spaced breakpoints.

    Values lie on the grid 1/denominator; listed by number of pieces, then
    lexicographically by values.
    """
    grid = [Fraction(k, denominator) for k in range(denominator + 1)]
    found: List[PLMap] = []
    for pieces in range(1, max_pieces + 1):
        for values in product(grid, repeat=pieces + 1):
            if any(a == b for a, b in zip(values, values[1:])):
                continue
            if min(values) != ZERO or max(values) != ONE:
                continue
            h = PLMap.through(values)
            if len(h.normalized().xs) == len(h.xs):
                found.append(h)
    return found

