"""Right shifts on the generator G."""

from fractions import Fraction
from typing import Any, Dict, Optional

from ..core.morphism import CuMorphism
from ..instances.generator import Gen, GeneratorG, canonical
from ..utils.codec import encode_number
from ..utils.errors import PreconditionError


class ShiftMorphism(CuMorphism):
    """f ↦ f(· - a): every threshold moves right by a; 1_{(t,1]} ↦ 1_{(t+a,1]}.

    Thresholds pushed to 1 or beyond disappear, so the shift by 1 is zero.
    """

    def __init__(self, G: GeneratorG, amount: Any) -> None:
        self.amount: Fraction = Fraction(amount)
        if not 0 <= self.amount <= 1:
            raise PreconditionError(f"Shift amount must lie in [0, 1], got {amount!r}")
        super().__init__(G, G, f"shift+{self.amount}")

    def apply(self, x: Gen) -> Gen:
        inf = None if x.infinite is None else x.infinite + self.amount
        return canonical([t + self.amount for t in x.thresholds], inf)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "shift", "amount": encode_number(self.amount)}

    def compose_closed(self, inner: CuMorphism) -> Optional[CuMorphism]:
        if isinstance(inner, ShiftMorphism):
            return ShiftMorphism(self.domain, min(self.amount + inner.amount, 1))
        return None


def shift_sequence(G: GeneratorG, n: int) -> ShiftMorphism:
    """τ_n, the shift by 1/n."""
    if n < 1:
        raise PreconditionError(f"Shift index must be >= 1, got {n}")
    return ShiftMorphism(G, Fraction(1, n))
