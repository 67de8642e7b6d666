"""Morphisms between elementary semigroups E_n -> E_m.

A monoid map out of E_n is fixed by the image k of the generator 1, since
j = j·1 and ∞ = (n+1)·1. The candidate is a Cu-morphism iff (n+1)k
saturates in E_m, and an order-embedding iff moreover k ≠ 0 and nk stays
finite, i.e. m/(n+1) < k <= m/n.
"""

from enum import Enum
from itertools import product
from typing import Any, Dict, List, Optional

from ..core.morphism import CuMorphism, IdentityMorphism
from ..instances.elementary import Elementary
from ..instances.extnat import INF, Ext, encode_ext, ext_mul, is_inf
from ..utils.errors import StructuralError


class HomKind(str, Enum):
    NOT_MORPHISM = "not_morphism"
    MORPHISM = "morphism"
    ORDER_EMBEDDING = "order_embedding"


class ElementaryMorphism(CuMorphism):
    """The additive candidate E_n -> E_m with 1 ↦ k."""

    def __init__(self, n: int, m: int, k: Ext) -> None:
        self.n: int = n
        self.m: int = m
        super().__init__(Elementary(n), Elementary(m), f"1↦{encode_ext(k)}")
        self.k: Ext = self.codomain.saturate(k)

    def apply(self, x: Ext) -> Ext:
        if is_inf(x):
            return self.codomain.saturate(ext_mul(self.n + 1, self.k))
        return self.codomain.saturate(ext_mul(x, self.k))

    @property
    def kind(self) -> HomKind:
        return elementary_hom_classify(self.n, self.m, self.k)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "elementary", "n": self.n, "m": self.m, "k": encode_ext(self.k)}

    def compose_closed(self, inner: CuMorphism) -> Optional[CuMorphism]:
        if isinstance(inner, ElementaryMorphism):
            return ElementaryMorphism(inner.n, self.m, self.apply(inner.k))
        return None


def elementary_hom_classify(n: int, m: int, k: Ext) -> HomKind:
    """Classify 1 ↦ k by the saturation rule; the zero map is a plain morphism."""
    if is_inf(k) or k > m:
        return HomKind.MORPHISM
    if k == 0:
        return HomKind.MORPHISM
    if (n + 1) * k <= m:
        return HomKind.NOT_MORPHISM
    if n * k <= m:
        return HomKind.ORDER_EMBEDDING
    return HomKind.MORPHISM


def brute_force_classify(n: int, m: int, k: Ext) -> HomKind:
    """Check every monoid, order and sup law on the full carriers of E_n and E_m."""
    alpha = ElementaryMorphism(n, m, k)
    S, T = alpha.domain, alpha.codomain
    carrier = S.elements
    if alpha.apply(S.zero) != T.zero:
        return HomKind.NOT_MORPHISM
    for x, y in product(carrier, carrier):
        if alpha.apply(S.add(x, y)) != T.add(alpha.apply(x), alpha.apply(y)):
            return HomKind.NOT_MORPHISM
        if S.leq(x, y) and not T.leq(alpha.apply(x), alpha.apply(y)):
            return HomKind.NOT_MORPHISM
        if S.way_below(x, y) and not T.way_below(alpha.apply(x), alpha.apply(y)):
            return HomKind.NOT_MORPHISM
    reflects = all(
        S.leq(x, y)
        for x, y in product(carrier, carrier)
        if T.leq(alpha.apply(x), alpha.apply(y))
    )
    return HomKind.ORDER_EMBEDDING if reflects else HomKind.MORPHISM


def generator_images(m: int) -> List[Ext]:
    """Possible images of 1 in E_m, in increasing order."""
    return list(range(m + 1)) + [INF]


def elementary_enumerate(n: int, m: int, kind: str = "morphisms") -> List[ElementaryMorphism]:
    """All morphisms (or all order-embeddings) E_n -> E_m, ordered by the image of 1."""
    if n < 1 or m < 1:
        raise StructuralError(f"Elementary hom-sets need n, m >= 1, got n={n}, m={m}")
    wanted = {
        "morphisms": (HomKind.MORPHISM, HomKind.ORDER_EMBEDDING),
        "embeddings": (HomKind.ORDER_EMBEDDING,),
    }
    if kind not in wanted:
        raise StructuralError(f"Unknown hom kind {kind!r}; use 'morphisms' or 'embeddings'")
    return [
        ElementaryMorphism(n, m, k)
        for k in generator_images(m)
        if elementary_hom_classify(n, m, k) in wanted[kind]
    ]


def en_category_embedding(n: int, k: int, s: int) -> CuMorphism:
    """The unique order-embedding E_{n^k} -> E_{n^s}, 1 ↦ n^{s-k}."""
    if k > s:
        raise StructuralError(f"No morphism E_{n}^{k} -> E_{n}^{s} in e_n: {k} > {s}")
    if k == s:
        return IdentityMorphism(Elementary(n ** k))
    return ElementaryMorphism(n ** k, n ** s, n ** (s - k))


def saturation_map(n: int) -> ElementaryMorphism:
    """E_n -> {0, ∞}, every nonzero element to ∞."""
    alpha = ElementaryMorphism(n, 0, INF)
    alpha.label = "saturate"
    return alpha
