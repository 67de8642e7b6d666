"""Finite semigroups given by explicit tables."""

from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..core.semigroup import CuSemigroup
from ..utils.errors import RepresentationError, StructuralError


class FiniteTableSemigroup(CuSemigroup):
    """Named elements with a sum table, an order and a way-below relation.

    The relations are given as sets of pairs; when `way_below` is omitted
    every element is compact and << coincides with <=.
    """

    def __init__(
        self,
        key: str,
        elements: Iterable[str],
        zero: str,
        add_table: Mapping[Tuple[str, str], str],
        leq_pairs: Iterable[Tuple[str, str]],
        way_below_pairs: Optional[Iterable[Tuple[str, str]]] = None,
    ) -> None:
        super().__init__(key)
        self.names: Tuple[str, ...] = tuple(elements)
        if zero not in self.names:
            raise StructuralError(f"Zero {zero!r} is not an element of {key}")
        self._zero = zero
        self._add: Dict[Tuple[str, str], str] = {}
        for (a, b), c in add_table.items():
            self._add[(a, b)] = c
            self._add.setdefault((b, a), c)
        self._leq: Set[Tuple[str, str]] = set(leq_pairs) | {(x, x) for x in self.names}
        self._ll: Set[Tuple[str, str]] = set(way_below_pairs) if way_below_pairs is not None else set(self._leq)
        for a in self.names:
            for b in self.names:
                if (a, b) not in self._add:
                    raise StructuralError(f"Sum table of {key} misses {a} + {b}")

    @property
    def zero(self) -> str:
        return self._zero

    def add(self, x: str, y: str) -> str:
        return self._add[(x, y)]

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self._leq

    def way_below(self, x: str, y: str) -> bool:
        return (x, y) in self._ll

    def basis_level(self, depth: int) -> List[str]:
        return list(self.names)

    def interpolate(self, low: str, high: str) -> str:
        for z in self.names:
            if z not in (low, high) and self.way_below(low, z) and self.way_below(z, high):
                return z
        if self.way_below(low, low):
            return low
        if self.way_below(high, high):
            return high
        raise RepresentationError(f"No interpolant between {low} and {high} in {self.key}")

    def encode(self, x: str) -> Any:
        return x

    def decode(self, data: Any) -> str:
        if data not in self.names:
            raise ValueError(f"{data!r} is not in {self.key}")
        return data

    def contains(self, x: Any) -> bool:
        return x in self.names

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": "table",
            "key": self.key,
            "elements": list(self.names),
            "zero": self._zero,
            "add": sorted([a, b, c] for (a, b), c in self._add.items()),
            "leq": sorted([a, b] for a, b in self._leq),
            "way_below": sorted([a, b] for a, b in self._ll),
        }
