"""Finite-set comparison of morphisms and n-refinements."""

from typing import List, Optional, Tuple

from ..utils.errors import PreconditionError, StructuralError
from .morphism import CuMorphism
from .semigroup import Element, interpolate_checked
from .subset import FiniteSubset


def _check_shapes(alpha: CuMorphism, beta: CuMorphism, F: FiniteSubset) -> None:
    if alpha.domain != beta.domain or alpha.codomain != beta.codomain:
        raise StructuralError(
            f"{alpha.label} and {beta.label} do not share domain and codomain"
        )
    if F.host != alpha.domain:
        raise StructuralError(f"F lives in {F.host.key}, not in {alpha.domain.key}")


def comparison_failure(alpha: CuMorphism, beta: CuMorphism, F: FiniteSubset) -> Optional[Tuple[Element, Element]]:
    """First (x', x) in F.ll_pairs breaking α ≃_F β, or None."""
    _check_shapes(alpha, beta, F)
    T = alpha.codomain
    for low, high in F.ll_pairs:
        if not T.leq(alpha.apply(low), beta.apply(high)):
            return (low, high)
        if not T.leq(beta.apply(low), alpha.apply(high)):
            return (low, high)
    return None


def compare_on(alpha: CuMorphism, beta: CuMorphism, F: FiniteSubset) -> bool:
    """α(x') <= β(x) and β(x') <= α(x) for every x' << x in F."""
    return comparison_failure(alpha, beta, F) is None


def refinement_chain(F: FiniteSubset, low: Element, high: Element, n: int) -> List[Element]:
    """g_1 << ... << g_n squeezed between low << high."""
    S = F.host
    if low == high:
        return [low] * n
    chain: List[Element] = []
    current = low
    for _ in range(n):
        current = interpolate_checked(S, current, high)
        chain.append(current)
    return chain


def n_refinement(F: FiniteSubset, n: int) -> FiniteSubset:
    """F̃ ⊇ F with an n-chain f' << g_1 << ... << g_n << f for each pair."""
    if n < 1:
        raise PreconditionError(f"Refinement length must be >= 1, got {n}")
    extra: List[Element] = []
    for low, high in F.strict_pairs:
        extra.extend(refinement_chain(F, low, high, n))
    if not extra:
        return F
    return F.union(extra)
