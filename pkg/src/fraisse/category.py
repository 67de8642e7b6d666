"""Enumerable categories of Cu-semigroups with optional closed forms.

Objects and hom-sets are streams in a fixed order; every "first witness"
refers to that order. Closed-form JEP, amalgamation and return maps are
optional; when a category supplies one, the engine uses it first and
still verifies the result.
"""

from abc import ABC, abstractmethod
from itertools import islice
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ..core.morphism import CuMorphism, IdentityMorphism, compose
from ..core.semigroup import CuSemigroup, Element
from ..core.subset import FiniteSubset

Span = Tuple[CuSemigroup, CuMorphism, CuMorphism]


class FraisseCategory(ABC):
    """A countable category of countably-based Cu-semigroups."""

    name: str = "category"
    # canonical steps tried before amalgamating when a demand is open
    pad_limit: int = 0
    # False when return_closed_form is complete and enumeration must not undercut it
    return_search: bool = True

    @abstractmethod
    def objects(self) -> Iterator[CuSemigroup]:
        ...

    @abstractmethod
    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        ...

    def describe(self) -> Dict[str, Any]:
        return {"category": self.name}

    # ===== Structure =====

    def identity(self, A: CuSemigroup) -> CuMorphism:
        return IdentityMorphism(A)

    def compose(self, outer: CuMorphism, inner: CuMorphism) -> CuMorphism:
        return compose(outer, inner)

    def first_object(self) -> CuSemigroup:
        return next(iter(self.objects()))

    def object_at(self, index: int) -> Optional[CuSemigroup]:
        return next(islice(self.objects(), index, None), None)

    def outgoing(self, A: CuSemigroup, diagonals: int = 64) -> Iterator[CuMorphism]:
        """Morphisms out of A, dovetailed over (object index, hom index)."""
        seen: List[CuSemigroup] = []
        cached: Dict[int, List[CuMorphism]] = {}
        objects = self.objects()
        exhausted = False
        for d in range(diagonals):
            if not exhausted and len(seen) <= d:
                nxt = next(objects, None)
                if nxt is None:
                    exhausted = True
                else:
                    seen.append(nxt)
            for o in range(min(d + 1, len(seen))):
                h = d - o
                if o not in cached:
                    cached[o] = list(islice(self.homs(A, seen[o]), diagonals))
                if h < len(cached[o]):
                    yield cached[o][h]

    def stage_generator(self, S: CuSemigroup) -> Element:
        """The element whose saturation the ledger tracks: the unit, else a minimal nonzero basis element."""
        unit = getattr(S, "unit", None)
        if unit is not None:
            return unit
        nonzero = [x for x in S.basis(1) if x != S.zero]
        return next(x for x in nonzero if not any(y != x and S.leq(y, x) for y in nonzero))

    # ===== Optional closed forms =====

    def jep_closed_form(self, A1: CuSemigroup, A2: CuSemigroup) -> Optional[Span]:
        return None

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        return None

    def return_closed_form(self, alpha: CuMorphism, sigma: CuMorphism, F: FiniteSubset) -> Optional[CuMorphism]:
        """β with β∘α ≃_F σ for α: A -> T and σ: A -> S_j."""
        return None

    def canonical_step(self, S: CuSemigroup) -> Optional[CuMorphism]:
        return None

    def identification(self, stages: List[CuSemigroup], maps: List[CuMorphism]) -> Optional[Tuple[CuSemigroup, Any]]:
        """(target, stage_maps) identifying a prefix colimit with a closed form."""
        return None

    def factor_through_stage(self, stages: List[CuSemigroup], maps: List[CuMorphism], alpha: CuMorphism) -> Optional[Tuple[int, CuMorphism]]:
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"
