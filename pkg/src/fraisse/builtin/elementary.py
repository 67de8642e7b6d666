"""Categories of elementary semigroups: e_n, e_∞ and its order-embedding subcategory."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ...core.morphism import CuMorphism, FunctionMorphism
from ...core.semigroup import CuSemigroup
from ...core.subset import FiniteSubset
from ...hom.elementary import ElementaryMorphism, elementary_enumerate, en_category_embedding, saturation_map
from ...instances.elementary import Elementary
from ...instances.extnat import INF, is_inf
from ...instances.softdim import TruncatedEp, truncated_embed_stage
from ...utils.errors import PreconditionError, StructuralError
from ..category import FraisseCategory, Span


def _generator_image(alpha: CuMorphism) -> Any:
    return alpha.apply(1)


# ===== e_n =====

class PowerElementaryCategory(FraisseCategory):
    """Objects E_{n^k}; Hom(E_{n^k}, E_{n^s}) is the single embedding 1 ↦ n^{s-k} when k <= s."""

    pad_limit = 64

    def __init__(self, n: int = 2) -> None:
        if n < 2:
            raise StructuralError(f"e_n needs n >= 2, got {n}")
        self.n: int = n
        self.name = f"e_{n}"

    def describe(self) -> Dict[str, Any]:
        return {"category": "e_n", "n": self.n}

    def objects(self) -> Iterator[CuSemigroup]:
        for k in count():
            yield Elementary(self.n ** k)

    def exponent(self, S: CuSemigroup) -> Optional[int]:
        if not isinstance(S, Elementary) or S.n < 1:
            return None
        size, k = S.n, 0
        while size % self.n == 0:
            size //= self.n
            k += 1
        return k if size == 1 else None

    def embedding(self, k: int, s: int) -> CuMorphism:
        return en_category_embedding(self.n, k, s)

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        k, s = self.exponent(A), self.exponent(B)
        if k is not None and s is not None and k <= s:
            yield self.embedding(k, s)

    def canonical_step(self, S: CuSemigroup) -> Optional[CuMorphism]:
        k = self.exponent(S)
        return None if k is None else self.embedding(k, k + 1)

    def jep_closed_form(self, A1: CuSemigroup, A2: CuSemigroup) -> Optional[Span]:
        k1, k2 = self.exponent(A1), self.exponent(A2)
        if k1 is None or k2 is None:
            return None
        s = max(k1, k2)
        return (Elementary(self.n ** s), self.embedding(k1, s), self.embedding(k2, s))

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        s1, s2 = self.exponent(alpha1.codomain), self.exponent(alpha2.codomain)
        if s1 is None or s2 is None:
            return None
        s = max(s1, s2)
        return (Elementary(self.n ** s), self.embedding(s1, s), self.embedding(s2, s))

    def return_closed_form(self, alpha: CuMorphism, sigma: CuMorphism, F: FiniteSubset) -> Optional[CuMorphism]:
        t, s = self.exponent(alpha.codomain), self.exponent(sigma.codomain)
        if t is None or s is None or t > s:
            return None
        return self.embedding(t, s)

    # ===== Closed-form limit =====

    def stage_map(self, E: TruncatedEp, S: CuSemigroup) -> CuMorphism:
        k = self.exponent(S)
        return FunctionMorphism(S, E, lambda x: truncated_embed_stage(E, k, x), f"x↦x/{self.n}^{k}", {"n": self.n, "k": k})

    def identification(self, stages: List[CuSemigroup], maps: List[CuMorphism]) -> Optional[Tuple[CuSemigroup, Any]]:
        if any(self.exponent(S) is None for S in stages):
            return None
        E = TruncatedEp(self.n)
        return E, [self.stage_map(E, S) for S in stages]

    def factor_through_stage(self, stages: List[CuSemigroup], maps: List[CuMorphism], alpha: CuMorphism) -> Optional[Tuple[int, CuMorphism]]:
        """E_m -> E_n truncated with 1 ↦ q factors through the first stage where q·n^k is whole."""
        if not isinstance(alpha.domain, Elementary) or not isinstance(alpha.codomain, TruncatedEp):
            return None
        image = _generator_image(alpha)
        for i, S in enumerate(stages):
            k = self.exponent(S)
            if k is None:
                continue
            if image == alpha.codomain.top:
                candidate = ElementaryMorphism(alpha.domain.n, S.n, INF)
            else:
                scaled = Fraction(image.value) * self.n ** k
                if scaled.denominator != 1:
                    continue
                candidate = ElementaryMorphism(alpha.domain.n, S.n, int(scaled))
            if candidate.kind != "not_morphism":
                return i, candidate
        return None


# ===== e_∞ =====

class SaturatingElementaryCategory(FraisseCategory):
    """Objects E_n (n >= 1) with every nonzero Cu-morphism; the limit is {0, ∞}."""

    name = "e_inf"
    pad_limit = 4

    def objects(self) -> Iterator[CuSemigroup]:
        for n in count(1):
            yield Elementary(n)

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        if not (isinstance(A, Elementary) and isinstance(B, Elementary)) or A.n < 1 or B.n < 1:
            return
        for alpha in elementary_enumerate(A.n, B.n, "morphisms"):
            if alpha.k != 0:
                yield alpha

    def saturation(self, A: CuSemigroup, B: CuSemigroup) -> CuMorphism:
        return ElementaryMorphism(A.n, B.n, INF)

    def canonical_step(self, S: CuSemigroup) -> Optional[CuMorphism]:
        return self.saturation(S, Elementary(S.n + 1))

    def jep_closed_form(self, A1: CuSemigroup, A2: CuSemigroup) -> Optional[Span]:
        n1, n2 = A1.n, A2.n
        B = Elementary(n1 * n2)
        return (B, ElementaryMorphism(n1, n1 * n2, n2), ElementaryMorphism(n2, n1 * n2, n1))

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        B1, B2 = alpha1.codomain, alpha2.codomain
        C = B1 if B1 == B2 else Elementary(B1.n * B2.n)
        return (C, self.saturation(B1, C), self.saturation(B2, C))

    def return_closed_form(self, alpha: CuMorphism, sigma: CuMorphism, F: FiniteSubset) -> Optional[CuMorphism]:
        if not is_inf(sigma.apply(1)):
            return None
        return self.saturation(alpha.codomain, sigma.codomain)

    def identification(self, stages: List[CuSemigroup], maps: List[CuMorphism]) -> Optional[Tuple[CuSemigroup, Any]]:
        return Elementary(0), [saturation_map(S.n) for S in stages]

    def factor_through_stage(self, stages: List[CuSemigroup], maps: List[CuMorphism], alpha: CuMorphism) -> Optional[Tuple[int, CuMorphism]]:
        """Any E_m -> {0, ∞} is the saturation, which factors through stage 0 as 1 ↦ ∞."""
        if not isinstance(alpha.domain, Elementary) or alpha.codomain != Elementary(0):
            return None
        return 0, self.saturation(alpha.domain, stages[0])


class EmbeddingElementaryCategory(FraisseCategory):
    """E_n (n >= 1) with order-embeddings only; near amalgamation fails here."""

    name = "e_inf_embeddings"

    def objects(self) -> Iterator[CuSemigroup]:
        for n in count(1):
            yield Elementary(n)

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        if not (isinstance(A, Elementary) and isinstance(B, Elementary)) or A.n < 1 or B.n < 1:
            return
        yield from elementary_enumerate(A.n, B.n, "embeddings")


# ===== Obstruction =====

@dataclass
class ObstructionCertificate:
    """Why 1 ↦ k1 and 1 ↦ k2 out of E_1 into E_n have no amalgam by embeddings.

    An embedding E_n -> E_m sends 1 into (m/(n+1), m/n], so the two
    composites send 1 into (k·m/(n+1), k·m/n] for k = k1, k2. When
    k1/n < k2/(n+1) the intervals are disjoint for every m.
    """
    n: int
    k1: int
    k2: int
    m_max: int
    holds_for_all: bool
    intervals: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.holds_for_all and all(row["disjoint"] for row in self.intervals)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k1": self.k1,
            "k2": self.k2,
            "m_max": self.m_max,
            "holds_for_all": self.holds_for_all,
            "passed": self.passed,
            "intervals": self.intervals,
        }


def _text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def obstruction_certificate(n: int, m_max: int, k1: int, k2: int) -> ObstructionCertificate:
    if not 0 < k1 < k2:
        raise PreconditionError(f"Need 0 < k1 < k2, got k1={k1}, k2={k2}")
    for k in (k1, k2):
        if not n < 2 * k <= 2 * n:
            raise PreconditionError(f"1 ↦ {k} is not an order-embedding E_1 -> E_{n}")
    holds = Fraction(k1, n) < Fraction(k2, n + 1)
    cert = ObstructionCertificate(n, k1, k2, m_max, holds)
    for m in range(1, m_max + 1):
        low1, high1 = Fraction(k1 * m, n + 1), Fraction(k1 * m, n)
        low2, high2 = Fraction(k2 * m, n + 1), Fraction(k2 * m, n)
        cert.intervals.append({
            "m": m,
            "first": [_text(low1), _text(high1)],
            "second": [_text(low2), _text(high2)],
            "disjoint": high1 <= low2 or high2 <= low1,
        })
    return cert
