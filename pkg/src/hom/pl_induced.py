"""Morphisms of Lsc([0,1], N̄) induced by PL surjections: l ↦ l ∘ h."""

from fractions import Fraction
from typing import Any, Dict, Optional, Set

from ..core.morphism import CuMorphism
from ..instances.steplsc import IntervalLsc, Step, from_evaluator, value_at
from ..pl.plmap import PLMap, identity_map, require_surjection


def pullback_step(f: Step, h: PLMap) -> Step:
    """f ∘ h, exact: breakpoints of h plus the preimages of the breakpoints of f."""
    breaks: Set[Fraction] = set(h.xs)
    for b in f.breaks:
        breaks.update(h.preimage_points(b))
    return from_evaluator(
        breaks,
        lambda t: value_at(f, h(t)),
        lambda x, y: value_at(f, h((x + y) / 2)),
    )


class PLInducedMorphism(CuMorphism):
    """Lsc(h): 1_V ↦ 1_{h^{-1}(V)} for a PL surjection h of [0, 1]."""

    def __init__(self, h: PLMap, S: Optional[IntervalLsc] = None) -> None:
        require_surjection(h)
        S = S or IntervalLsc()
        super().__init__(S, S, f"Lsc({h})")
        self.h: PLMap = h

    def apply(self, x: Step) -> Step:
        return pullback_step(x, self.h)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "pl_induced", "h": self.h.encode()}

    def compose_closed(self, inner: CuMorphism) -> Optional[CuMorphism]:
        if isinstance(inner, PLInducedMorphism):
            return PLInducedMorphism(inner.h.compose(self.h), self.domain)
        return None


def pl_induced_morphism(h: PLMap) -> PLInducedMorphism:
    return PLInducedMorphism(h)


def pl_identity() -> PLInducedMorphism:
    return PLInducedMorphism(identity_map())
