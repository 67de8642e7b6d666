"""Scalar morphisms: multiplication on N̄ and on the SoftDim family, and maps out of N̄."""

from fractions import Fraction
from typing import Any, Dict, Optional

from ..core.morphism import CuMorphism
from ..core.semigroup import CuSemigroup, Element
from ..instances.extnat import ExtNat, ext_mul, is_inf
from ..instances.softdim import SoftDim, Tagged, TruncatedEp
from ..utils.codec import encode_number
from ..utils.errors import PreconditionError, StructuralError


class ScalingMorphism(CuMorphism):
    """x ↦ c·x on N̄ (c in N̄) or on a SoftDim semigroup (c a positive rational).

    On a semigroup with a compact part c must keep compact values compact,
    so for S_p it has to lie in N[1/p].
    """

    def __init__(self, S: CuSemigroup, factor: Any) -> None:
        if isinstance(S, ExtNat):
            if not (is_inf(factor) or (isinstance(factor, int) and factor >= 0)):
                raise PreconditionError(f"Scaling on N̄ needs a factor in N̄, got {factor!r}")
            self.factor = factor
        elif isinstance(S, SoftDim) and not isinstance(S, TruncatedEp):
            self.factor = Fraction(factor)
            if self.factor < 0:
                raise PreconditionError(f"Negative scaling factor {factor!r}")
            if S.compact_base is not None and not S.is_compact_value(self.factor):
                raise PreconditionError(f"Scaling by {self.factor} leaves the compact part of {S.key}")
        else:
            raise StructuralError(f"No scaling morphisms on {S.key}")
        super().__init__(S, S, f"×{self.factor}")

    def apply(self, x: Element) -> Element:
        if isinstance(self.domain, ExtNat):
            return ext_mul(self.factor, x)
        if self.factor == 0 or x.value == 0:
            return self.domain.zero
        return Tagged(x.soft, x.value if is_inf(x.value) else self.factor * x.value)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "scaling", "object": self.domain.describe(), "factor": encode_number(self.factor)}

    def compose_closed(self, inner: CuMorphism) -> Optional[CuMorphism]:
        if isinstance(inner, ScalingMorphism):
            if isinstance(self.domain, ExtNat):
                return ScalingMorphism(self.domain, ext_mul(self.factor, inner.factor))
            return ScalingMorphism(self.domain, self.factor * inner.factor)
        if isinstance(inner, FromExtNat) and self.codomain.is_compact(self.apply(inner.unit_image)):
            return FromExtNat(self.codomain, self.apply(inner.unit_image))
        return None


class FromExtNat(CuMorphism):
    """N̄ -> T with 1 ↦ t0; finite n ↦ n·t0 and ∞ ↦ ∞·t0.

    t0 must be compact because 1 is.
    """

    def __init__(self, codomain: CuSemigroup, unit_image: Element) -> None:
        codomain.require(unit_image)
        if not codomain.is_compact(unit_image):
            raise PreconditionError(f"{unit_image!r} is not compact in {codomain.key}")
        super().__init__(ExtNat(), codomain, f"1↦{codomain.encode(unit_image)}")
        self.unit_image: Element = unit_image

    def apply(self, x: Element) -> Element:
        if is_inf(x):
            return self.codomain.infinite_multiple(self.unit_image)
        return self.codomain.multiple(x, self.unit_image)

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": "from_extnat",
            "codomain": self.codomain.describe(),
            "unit_image": self.codomain.encode(self.unit_image),
        }

    def compose_closed(self, inner: CuMorphism) -> Optional[CuMorphism]:
        if isinstance(inner, ScalingMorphism) and isinstance(inner.domain, ExtNat) and not is_inf(inner.factor):
            return FromExtNat(self.codomain, self.apply(inner.factor))
        return None
