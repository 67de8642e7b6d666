"""s_p: the single object N̄ with the maps ×p^a, whose limit is S_p."""

from fractions import Fraction
from itertools import count
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ...core.morphism import CuMorphism, IdentityMorphism
from ...core.semigroup import CuSemigroup
from ...core.subset import FiniteSubset
from ...hom.scaling import FromExtNat, ScalingMorphism
from ...instances.extnat import ExtNat, is_inf
from ...instances.softdim import compact, is_prime, make_softdim
from ...utils.errors import StructuralError
from ..category import FraisseCategory, Span


class ScaledCategory(FraisseCategory):
    """Hom(N̄, N̄) = {×p^a : a >= 0}, listed by a."""

    pad_limit = 64
    # a return map is always a genuine step ×p^b with b >= 1
    return_search = False

    def __init__(self, p: int = 2) -> None:
        if not is_prime(p):
            raise StructuralError(f"s_p needs a prime p, got {p}")
        self.p: int = p
        self.name = f"s_{p}"

    def describe(self) -> Dict[str, Any]:
        return {"category": "s_p", "p": self.p}

    def objects(self) -> Iterator[CuSemigroup]:
        yield ExtNat()

    def power(self, a: int) -> CuMorphism:
        return IdentityMorphism(ExtNat()) if a == 0 else ScalingMorphism(ExtNat(), self.p ** a)

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        if not (isinstance(A, ExtNat) and isinstance(B, ExtNat)):
            return
        for a in count():
            yield self.power(a)

    def exponent(self, alpha: CuMorphism) -> Optional[int]:
        """a with α = ×p^a, or None for any other map."""
        if isinstance(alpha, IdentityMorphism):
            return 0
        if not isinstance(alpha, ScalingMorphism) or is_inf(alpha.factor) or alpha.factor < 1:
            return None
        factor, a = alpha.factor, 0
        while factor % self.p == 0:
            factor //= self.p
            a += 1
        return a if factor == 1 else None

    def canonical_step(self, S: CuSemigroup) -> Optional[CuMorphism]:
        return self.power(1)

    def jep_closed_form(self, A1: CuSemigroup, A2: CuSemigroup) -> Optional[Span]:
        N = ExtNat()
        return (N, IdentityMorphism(N), IdentityMorphism(N))

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        a, b = self.exponent(alpha1), self.exponent(alpha2)
        if a is None or b is None:
            return None
        m = max(a, b)
        return (ExtNat(), self.power(m - a), self.power(m - b))

    def return_closed_form(self, alpha: CuMorphism, sigma: CuMorphism, F: FiniteSubset) -> Optional[CuMorphism]:
        a, c = self.exponent(alpha), self.exponent(sigma)
        if a is None or c is None or c - a < 1:
            return None
        return self.power(c - a)

    # ===== Closed-form limit =====

    def exponents(self, maps: List[CuMorphism]) -> Optional[List[int]]:
        """e_i with σ_{0,i} = ×p^{e_i}."""
        total = [0]
        for sigma in maps:
            a = self.exponent(sigma)
            if a is None:
                return None
            total.append(total[-1] + a)
        return total

    def identification(self, stages: List[CuSemigroup], maps: List[CuMorphism]) -> Optional[Tuple[CuSemigroup, Any]]:
        e = self.exponents(maps)
        if e is None:
            return None
        S = make_softdim(self.p)
        return S, [FromExtNat(S, compact(Fraction(1, self.p ** ei))) for ei in e]

    def factor_through_stage(self, stages: List[CuSemigroup], maps: List[CuMorphism], alpha: CuMorphism) -> Optional[Tuple[int, CuMorphism]]:
        """N̄ -> S_p with 1 ↦ k/p^l factors through the first stage with e_i >= l."""
        e = self.exponents(maps)
        if e is None or not isinstance(alpha, FromExtNat) or alpha.unit_image.soft:
            return None
        q = Fraction(alpha.unit_image.value)
        for i, ei in enumerate(e):
            scaled = q * self.p ** ei
            if scaled.denominator == 1:
                n = int(scaled)
                return i, IdentityMorphism(ExtNat()) if n == 1 else ScalingMorphism(ExtNat(), n)
        return None
