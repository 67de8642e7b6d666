"""K_P: Lsc([0,1], N̄) with the maps induced by PL surjections of [0, 1]."""

from typing import Any, Dict, Iterator, Optional

from ...core.morphism import CuMorphism, IdentityMorphism
from ...core.semigroup import CuSemigroup
from ...core.subset import FiniteSubset
from ...hom.pl_induced import PLInducedMorphism, pl_identity
from ...instances.steplsc import IntervalLsc
from ...pl.kp import enumerate_pl_surjections, kp_amalgamate
from ..category import FraisseCategory, Span


def _as_induced(alpha: CuMorphism) -> Optional[PLInducedMorphism]:
    if isinstance(alpha, PLInducedMorphism):
        return alpha
    if isinstance(alpha, IdentityMorphism) and isinstance(alpha.domain, IntervalLsc):
        return pl_identity()
    return None


class PseudoArcCategory(FraisseCategory):
    """One object; homs are the identity, then PL surjections by pieces and grid."""

    name = "K_P"

    def __init__(self, max_pieces: int = 3, denominator: int = 2) -> None:
        self.max_pieces: int = max_pieces
        self.denominator: int = denominator

    def describe(self) -> Dict[str, Any]:
        return {"category": "K_P", "max_pieces": self.max_pieces, "denominator": self.denominator}

    def objects(self) -> Iterator[CuSemigroup]:
        yield IntervalLsc()

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        if not (isinstance(A, IntervalLsc) and isinstance(B, IntervalLsc)):
            return
        yield IdentityMorphism(A)
        for h in enumerate_pl_surjections(self.max_pieces, self.denominator):
            if h.xs != (0, 1) or h.ys != (0, 1):
                yield PLInducedMorphism(h, A)

    def jep_closed_form(self, A1: CuSemigroup, A2: CuSemigroup) -> Optional[Span]:
        S = IntervalLsc()
        return (S, IdentityMorphism(S), IdentityMorphism(S))

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        first, second = _as_induced(alpha1), _as_induced(alpha2)
        if first is None or second is None:
            return None
        found = kp_amalgamate(first, second, F)
        return (IntervalLsc(), found.beta1, found.beta2)
