"""Categories of simplicial semigroups N̄^r: K_Cantor and the rank-bounded s_dim.

A unital embedding N̄^r -> N̄^s is Lsc(f) for a surjection f: X_s -> X_r,
row i of its matrix being e_{f(i)}. Both categories amalgamate in
standard form: keep one copy of the shared coordinates, then the
remaining rows of each side.
"""

from itertools import count, product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from ...core.morphism import CuMorphism, IdentityMorphism
from ...core.semigroup import CuSemigroup
from ...core.subset import FiniteSubset
from ...hom.simplicial import (
    Matrix,
    MatrixMorphism,
    enumerate_matrices,
    matrix_from_function,
    retraction_of,
    retraction_rows,
    simplicial_is_retractable,
)
from ...instances.simplicial import Simplicial
from ...utils.errors import StructuralError
from ..category import FraisseCategory, Span


def matrix_of(alpha: CuMorphism) -> Optional[Matrix]:
    if isinstance(alpha, MatrixMorphism):
        return alpha.matrix
    if isinstance(alpha, IdentityMorphism) and isinstance(alpha.domain, Simplicial):
        return MatrixMorphism.identity(alpha.domain.rank).matrix
    return None


def function_of(alpha: CuMorphism) -> Optional[List[int]]:
    """f with α = Lsc(f), or None when some row is not a unit row."""
    matrix = matrix_of(alpha)
    if matrix is None:
        return None
    f: List[int] = []
    for row in matrix:
        if sorted(row) != [0] * (len(row) - 1) + [1]:
            return None
        f.append(row.index(1))
    return f


def standard_amalgam(m1: Matrix, m2: Matrix) -> Optional[Tuple[int, Matrix, Matrix]]:
    """(rank, β1, β2) with β1·m1 = β2·m2, for retractable m1, m2 out of N̄^r.

    p_i(c) is the first row of m_i equal to e_c and q_i lists the other
    rows. The amalgam has coordinates c, then q_1, then q_2; each side
    copies its own rows and re-expresses the other side's extra rows
    through its p.
    """
    r = len(m1[0])
    p1, p2 = retraction_rows(m1), retraction_rows(m2)
    if p1 is None or p2 is None:
        return None
    q1 = [i for i in range(len(m1)) if i not in p1]
    q2 = [i for i in range(len(m2)) if i not in p2]

    def through(p: Sequence[int], width: int, row: Sequence[Any]) -> Tuple[Any, ...]:
        out = [0] * width
        for c in range(r):
            if row[c]:
                out[p[c]] = row[c]
        return tuple(out)

    def unit(width: int, i: int) -> Tuple[int, ...]:
        return tuple(1 if k == i else 0 for k in range(width))

    s1, s2 = len(m1), len(m2)
    beta1 = [unit(s1, p1[c]) for c in range(r)] + [unit(s1, q) for q in q1] + [through(p1, s1, m2[q]) for q in q2]
    beta2 = [unit(s2, p2[c]) for c in range(r)] + [through(p2, s2, m1[q]) for q in q1] + [unit(s2, q) for q in q2]
    return r + len(q1) + len(q2), tuple(beta1), tuple(beta2)


def surjections(s: int, r: int) -> Iterator[Tuple[int, ...]]:
    """Surjections X_s -> X_r in lexicographic order."""
    for f in product(range(r), repeat=s):
        if len(set(f)) == r:
            yield f


# ===== K_Cantor =====

class CantorCategory(FraisseCategory):
    """N̄^r (r >= 1) with unital embeddings; the limit is Lsc of the Cantor set."""

    name = "K_Cantor"
    pad_limit = 2

    def objects(self) -> Iterator[CuSemigroup]:
        for r in count(1):
            yield Simplicial(r)

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        if not (isinstance(A, Simplicial) and isinstance(B, Simplicial)):
            return
        for f in surjections(B.rank, A.rank):
            yield matrix_from_function(A.rank, f)

    def canonical_step(self, S: CuSemigroup) -> Optional[CuMorphism]:
        """Split every point in two: N̄^r -> N̄^{2r}, f(c) = c mod r."""
        r = S.rank
        return matrix_from_function(r, [c % r for c in range(2 * r)])

    def jep_closed_form(self, A1: CuSemigroup, A2: CuSemigroup) -> Optional[Span]:
        r1, r2 = A1.rank, A2.rank
        f1 = list(range(r1)) + [0] * r2
        f2 = [0] * r1 + list(range(r2))
        return (Simplicial(r1 + r2), matrix_from_function(r1, f1), matrix_from_function(r2, f2))

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        if function_of(alpha1) is None or function_of(alpha2) is None:
            return None
        found = standard_amalgam(matrix_of(alpha1), matrix_of(alpha2))
        if found is None:
            return None
        rank, beta1, beta2 = found
        return (Simplicial(rank), MatrixMorphism(beta1), MatrixMorphism(beta2))

    def return_closed_form(self, alpha: CuMorphism, sigma: CuMorphism, F: FiniteSubset) -> Optional[CuMorphism]:
        """Lsc(h) with f∘h = g: spread each fiber of g over the fiber of f round-robin."""
        f, g = function_of(alpha), function_of(sigma)
        if f is None or g is None:
            return None
        h: List[int] = [0] * len(g)
        for a in set(f):
            source = [i for i, v in enumerate(f) if v == a]
            target = [i for i, v in enumerate(g) if v == a]
            if len(target) < len(source):
                return None
            for m, i in enumerate(target):
                h[i] = source[m % len(source)]
        return matrix_from_function(len(f), h)


# ===== s_dim, rank-bounded =====

class SimplicialDimCategory(FraisseCategory):
    """N̄^r for r <= R with retractable {0, 1} matrices."""

    def __init__(self, max_rank: int = 3) -> None:
        if max_rank < 1:
            raise StructuralError(f"s_dim needs a rank bound >= 1, got {max_rank}")
        self.max_rank: int = max_rank
        self.name = f"s_dim<={max_rank}"

    def describe(self) -> Dict[str, Any]:
        return {"category": "s_dim_bounded", "R": self.max_rank}

    def objects(self) -> Iterator[CuSemigroup]:
        for r in range(1, self.max_rank + 1):
            yield Simplicial(r)

    def homs(self, A: CuSemigroup, B: CuSemigroup) -> Iterator[CuMorphism]:
        if not (isinstance(A, Simplicial) and isinstance(B, Simplicial)) or B.rank > self.max_rank:
            return
        yield from enumerate_matrices(A.rank, B.rank, 1, keep=simplicial_is_retractable)

    def amalgam_closed_form(self, alpha1: CuMorphism, alpha2: CuMorphism, F: FiniteSubset) -> Optional[Span]:
        m1, m2 = matrix_of(alpha1), matrix_of(alpha2)
        if m1 is None or m2 is None:
            return None
        found = standard_amalgam(m1, m2)
        if found is None or found[0] > self.max_rank:
            return None
        rank, beta1, beta2 = found
        return (Simplicial(rank), MatrixMorphism(beta1), MatrixMorphism(beta2))

    def return_closed_form(self, alpha: CuMorphism, sigma: CuMorphism, F: FiniteSubset) -> Optional[CuMorphism]:
        """σ∘ρ for the selection retraction ρ of α, when that is again a morphism here."""
        if not isinstance(alpha, MatrixMorphism) or not simplicial_is_retractable(alpha):
            return None
        beta = sigma.compose(retraction_of(alpha).rho)
        m = matrix_of(beta)
        if m is None or any(v not in (0, 1) for row in m for v in row) or not simplicial_is_retractable(m):
            return None
        return beta
