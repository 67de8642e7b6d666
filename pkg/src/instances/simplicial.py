"""Simplicial semigroups N̄^r, also the Lsc semigroups of finite discrete spaces."""

from itertools import product
from typing import Any, Dict, List, Tuple

from ..core.semigroup import CuSemigroup
from ..utils.errors import StructuralError
from .extnat import INF, Ext, decode_ext, encode_ext, ext_add, ext_mul, is_ext, is_inf

Vector = Tuple[Ext, ...]


class Simplicial(CuSemigroup):
    """Componentwise order, sum and way-below on r-tuples of N̄."""

    def __init__(self, rank: int) -> None:
        if rank < 1:
            raise StructuralError(f"Simplicial rank must be >= 1, got {rank}")
        super().__init__(f"Nbar^{rank}")
        self.rank: int = rank

    @property
    def zero(self) -> Vector:
        return (0,) * self.rank

    @property
    def unit(self) -> Vector:
        """1 = (1, ..., 1), the constant indicator on X_r."""
        return (1,) * self.rank

    def delta(self, i: int) -> Vector:
        """δ_i^r, 0-based."""
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def indicator(self, subset: Any) -> Vector:
        chosen = set(subset)
        return tuple(1 if j in chosen else 0 for j in range(self.rank))

    def add(self, x: Vector, y: Vector) -> Vector:
        return tuple(ext_add(a, b) for a, b in zip(x, y))

    def leq(self, x: Vector, y: Vector) -> bool:
        return all(a <= b for a, b in zip(x, y))

    def way_below(self, x: Vector, y: Vector) -> bool:
        return all(not is_inf(a) and a <= b for a, b in zip(x, y))

    def meet(self, x: Vector, y: Vector) -> Vector:
        return tuple(min(a, b) for a, b in zip(x, y))

    def basis_level(self, depth: int) -> List[Vector]:
        """Entries in {0..depth, ∞}, supported on the first `depth` coordinates."""
        values = list(range(depth + 1)) + [INF]
        width = min(depth, self.rank)
        padding = (0,) * (self.rank - width)
        return [tuple(v) + padding for v in product(values, repeat=width)]

    def interpolate(self, low: Vector, high: Vector) -> Vector:
        return low

    def encode(self, x: Vector) -> Any:
        return [encode_ext(a) for a in x]

    def decode(self, data: Any) -> Vector:
        if not isinstance(data, list) or len(data) != self.rank:
            raise ValueError(f"Expected {self.rank} components, got {data!r}")
        return tuple(decode_ext(a) for a in data)

    def contains(self, x: Any) -> bool:
        return isinstance(x, tuple) and len(x) == self.rank and all(is_ext(a) for a in x)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "simplicial", "rank": self.rank}

    def multiple(self, k: int, x: Vector) -> Vector:
        return tuple(ext_mul(k, a) for a in x)

    def infinite_multiple(self, x: Vector) -> Vector:
        return tuple(ext_mul(INF, a) for a in x)

    def approximating_chain(self, x: Vector, length: int) -> List[Vector]:
        return [tuple(l + 1 if is_inf(a) else a for a in x) for l in range(length)]


def make_simplicial(r: int) -> Simplicial:
    return Simplicial(r)
