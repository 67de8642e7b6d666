"""Matrix morphisms between simplicial semigroups, retracts and duality.

A morphism N̄^r -> N̄^s is a matrix M (s rows, r columns) over N̄ acting by
(Mx)_i = Σ_j M[i][j]·x_j with 0·∞ = 0. Column j is the image of δ_j.
"""

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.morphism import CuMorphism
from ..core.semigroup import Element
from ..instances.extnat import Ext, decode_ext, encode_ext, ext_mul, ext_sum, is_ext, is_inf
from ..instances.simplicial import Simplicial, Vector
from ..utils.errors import PreconditionError, RepresentationError, StructuralError
from ..utils.logger import get_logger

logger = get_logger(__name__)

Matrix = Tuple[Tuple[Ext, ...], ...]


def _as_matrix(rows: Sequence[Sequence[Ext]]) -> Matrix:
    matrix = tuple(tuple(row) for row in rows)
    if not matrix or not matrix[0]:
        raise StructuralError("A matrix morphism needs at least one row and one column")
    width = len(matrix[0])
    if any(len(row) != width for row in matrix):
        raise StructuralError("Ragged matrix")
    if not all(is_ext(v) for row in matrix for v in row):
        raise RepresentationError("Matrix entries must be extended naturals")
    return matrix


def matrix_product(outer: Matrix, inner: Matrix) -> Matrix:
    width = len(inner[0])
    return tuple(
        tuple(ext_sum(ext_mul(row[k], inner[k][j]) for k in range(len(inner))) for j in range(width))
        for row in outer
    )


class MatrixMorphism(CuMorphism):
    """x ↦ Mx between N̄^r and N̄^s."""

    def __init__(self, rows: Sequence[Sequence[Ext]], label: str = "") -> None:
        self.matrix: Matrix = _as_matrix(rows)
        super().__init__(Simplicial(len(self.matrix[0])), Simplicial(len(self.matrix)), label or "matrix")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def columns(self) -> int:
        return len(self.matrix[0])

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.matrix)

    def apply(self, x: Vector) -> Vector:
        return tuple(ext_sum(ext_mul(a, v) for a, v in zip(row, x)) for row in self.matrix)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "matrix", "rows": [[encode_ext(v) for v in row] for row in self.matrix]}

    def compose_closed(self, inner: CuMorphism) -> Optional[CuMorphism]:
        if isinstance(inner, MatrixMorphism):
            return MatrixMorphism(matrix_product(self.matrix, inner.matrix))
        return None

    @staticmethod
    def identity(rank: int) -> 'MatrixMorphism':
        return MatrixMorphism([[1 if i == j else 0 for j in range(rank)] for i in range(rank)], "id")

    @staticmethod
    def decode(data: Dict[str, Any]) -> 'MatrixMorphism':
        return MatrixMorphism([[decode_ext(v) for v in row] for row in data["rows"]])


def simplicial_hom(matrix: Sequence[Sequence[Ext]]) -> MatrixMorphism:
    return MatrixMorphism(matrix)


# ===== Predicates =====

def _rows_of(m: Any) -> Matrix:
    return m.matrix if isinstance(m, MatrixMorphism) else _as_matrix(m)


def simplicial_is_embedding(m: Any) -> bool:
    """Order-embedding iff every column j owns a row c·e_j with 0 < c < ∞."""
    matrix = _rows_of(m)
    for j in range(len(matrix[0])):
        if not any(
            row[j] != 0 and not is_inf(row[j]) and all(v == 0 for k, v in enumerate(row) if k != j)
            for row in matrix
        ):
            return False
    return True


def simplicial_maps_one_to_one(m: Any) -> bool:
    """1 ↦ 1: every row is a standard basis row."""
    return all(sorted(row) == [0] * (len(row) - 1) + [1] for row in _rows_of(m))


def retraction_rows(m: Any) -> Optional[List[int]]:
    """For each column j the first row equal to e_j, or None if some column has none."""
    matrix = _rows_of(m)
    chosen: List[int] = []
    for j in range(len(matrix[0])):
        unit = tuple(1 if k == j else 0 for k in range(len(matrix[0])))
        hit = next((i for i, row in enumerate(matrix) if row == unit), None)
        if hit is None:
            return None
        chosen.append(hit)
    return chosen


def simplicial_is_retractable(m: Any) -> bool:
    """Some (generalized) morphism ρ has ρ ∘ m = id; equivalently every e_j occurs as a row."""
    return retraction_rows(m) is not None


def matrix_from_function(r_in: int, f: Sequence[int]) -> MatrixMorphism:
    """Lsc(f): N̄^{r_in} -> N̄^{len(f)} for a map f: X_s -> X_{r_in}; row i is e_{f(i)}."""
    if any(not 0 <= v < r_in for v in f):
        raise StructuralError(f"Function values must lie in range({r_in}): {list(f)}")
    return MatrixMorphism([[1 if j == v else 0 for j in range(r_in)] for v in f], f"Lsc({list(f)})")


def enumerate_matrices(
    r_in: int,
    r_out: int,
    max_entry: int,
    keep: Callable[[Matrix], bool] = lambda _: True,
) -> Iterator[MatrixMorphism]:
    """Finite-entry matrices in lexicographic order of their row-major entries."""
    values = range(max_entry + 1)
    for flat in product(values, repeat=r_in * r_out):
        matrix = tuple(tuple(flat[i * r_in:(i + 1) * r_in]) for i in range(r_out))
        if keep(matrix):
            yield MatrixMorphism(matrix)


# ===== Retracts =====

@dataclass
class RetractPair:
    """ι: S -> T and ρ: T -> S with ρ ∘ ι = id_S."""
    iota: MatrixMorphism
    rho: MatrixMorphism

    def holds_on(self, elements: Sequence[Element]) -> bool:
        return all(self.rho.apply(self.iota.apply(x)) == x for x in elements)

    def verify(self, depth: int) -> bool:
        return self.holds_on(self.iota.domain.basis(depth))


def retraction_of(iota: MatrixMorphism) -> RetractPair:
    """The selection retraction: row j picks the first coordinate where ι(δ_j) = e_j sits."""
    chosen = retraction_rows(iota)
    if chosen is None:
        raise PreconditionError(f"{iota.label} is not retractable")
    rho = [[1 if i == hit else 0 for i in range(iota.rows)] for hit in chosen]
    return RetractPair(iota, MatrixMorphism(rho, "retract"))


def corrected_retraction(pair: RetractPair) -> RetractPair:
    """ρ'(x) = ρ(x ∧ ∞ι(1)): coordinates outside the support of ι(1) are cut off.

    ρ' is again a retraction of ι and keeps compact elements compact.
    """
    support = pair.iota.apply(pair.iota.domain.unit)
    rows = [
        [0 if support[i] == 0 else v for i, v in enumerate(row)]
        for row in pair.rho.matrix
    ]
    corrected = MatrixMorphism(rows, "retract'")
    if any(is_inf(v) for row in corrected.matrix for v in row):
        raise RepresentationError("Correction left an infinite entry on the support of ι(1)")
    return RetractPair(pair.iota, corrected)


# ===== Duality with maps of finite sets =====

@dataclass
class DualMap:
    """f_α: X_s -> X_r with α(1_U) = 1_{f_α^{-1}(U)}, or the PL map behind Lsc(h)."""
    table: Tuple[int, ...] = ()
    surjective: bool = False
    pl: Any = None

    def to_dict(self) -> Dict[str, Any]:
        if self.pl is not None:
            return {"kind": "pl", "h": self.pl.encode(), "surjective": self.surjective}
        return {"kind": "finite", "table": list(self.table), "surjective": self.surjective}


def lsc_dual_map(alpha: CuMorphism) -> DualMap:
    """The map of base spaces behind a unital morphism of Lsc semigroups."""
    from .pl_induced import PLInducedMorphism

    if isinstance(alpha, PLInducedMorphism):
        return DualMap(surjective=alpha.h.is_surjective(), pl=alpha.h)
    S, T = alpha.domain, alpha.codomain
    if not isinstance(S, Simplicial) or not isinstance(T, Simplicial):
        raise StructuralError(f"No base-space dual for {alpha.label}: {S.key} -> {T.key}")
    if alpha.apply(S.unit) != T.unit:
        raise PreconditionError(f"{alpha.label} does not send 1 to 1")
    table: List[Optional[int]] = [None] * T.rank
    for j in range(S.rank):
        image = alpha.apply(S.delta(j))
        if any(v not in (0, 1) for v in image):
            raise RepresentationError(f"{alpha.label} sends δ_{j} to the non-indicator {image}")
        for i, v in enumerate(image):
            if v == 1:
                table[i] = j
    dual = tuple(v for v in table if v is not None)
    surjective = set(dual) == set(range(S.rank))
    logger.debug(
        f"Dual map of {alpha.label}",
        extra={"extra_fields": {"table": list(dual), "surjective": surjective}},
    )
    return DualMap(table=dual, surjective=surjective)


# ===== Direct-sum transform of an inductive sequence =====

class DirectSumTransform:
    """T_i = S_0 ⊕ ... ⊕ S_i with τ(s_0..s_i) = (s_0..s_i, σ(s_i)).

    Every τ is retracted by the projection onto the first i+1 blocks, and
    the original sequence is recovered as the quotient by the ideal of
    elements whose last block dies.
    """

    def __init__(self, maps: Sequence[MatrixMorphism]) -> None:
        if not maps:
            raise PreconditionError("Need at least one connecting map")
        for a, b in zip(maps, maps[1:]):
            if a.codomain != b.domain:
                raise StructuralError(f"{a.label} and {b.label} do not chain")
        self.maps: List[MatrixMorphism] = list(maps)
        self.ranks: List[int] = [maps[0].columns] + [m.rows for m in maps]

    def width(self, i: int) -> int:
        return sum(self.ranks[: i + 1])

    def stage(self, i: int) -> Simplicial:
        return Simplicial(self.width(i))

    def connecting(self, i: int) -> MatrixMorphism:
        """τ_{i,i+1} as a matrix."""
        n_in, n_out = self.width(i), self.width(i + 1)
        offset = n_in - self.ranks[i]
        sigma = self.maps[i].matrix
        rows: List[List[Ext]] = []
        for r in range(n_out):
            if r < n_in:
                rows.append([1 if c == r else 0 for c in range(n_in)])
            else:
                block = sigma[r - n_in]
                rows.append([block[c - offset] if c >= offset else 0 for c in range(n_in)])
        return MatrixMorphism(rows, f"tau_{i},{i + 1}")

    def projection(self, i: int) -> MatrixMorphism:
        """π_{i+1,i}: keep the first blocks."""
        n_in, n_out = self.width(i + 1), self.width(i)
        return MatrixMorphism([[1 if c == r else 0 for c in range(n_in)] for r in range(n_out)], f"pi_{i + 1},{i}")

    def retract(self, i: int) -> RetractPair:
        return RetractPair(self.connecting(i), self.projection(i))

    def quotient(self, i: int) -> MatrixMorphism:
        """T_i -> S_i, the last block; its kernel is the ideal at stage i."""
        n_in = self.width(i)
        offset = n_in - self.ranks[i]
        return MatrixMorphism(
            [[1 if c == offset + r else 0 for c in range(n_in)] for r in range(self.ranks[i])],
            f"q_{i}",
        )

    def ideal_member(self, i: int, t: Vector) -> bool:
        """t lies in the ideal iff its last block is killed by some later connecting map."""
        last = self.quotient(i).apply(t)
        if all(v == 0 for v in last):
            return True
        for sigma in self.maps[i:]:
            last = sigma.apply(last)
            if all(v == 0 for v in last):
                return True
        return False
