"""Finite subsets of a Cu-semigroup with their cached way-below pairs."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Tuple

from .semigroup import CuSemigroup, Element


@dataclass(frozen=True)
class FiniteSubset:
    """A finite F ⊆ S; `ll_pairs` lists every (x', x) in F² with x' << x."""
    host: CuSemigroup
    elements: Tuple[Element, ...]
    ll_pairs: Tuple[Tuple[Element, Element], ...] = field(default=(), compare=False)

    @staticmethod
    def of(host: CuSemigroup, elements: Iterable[Element]) -> 'FiniteSubset':
        """Deduplicate, validate and order the elements canonically."""
        unique = {host.require(x) for x in elements}
        ordered = tuple(sorted(unique, key=host.order_key))
        pairs = tuple(
            (a, b) for a in ordered for b in ordered if host.way_below(a, b)
        )
        return FiniteSubset(host=host, elements=ordered, ll_pairs=pairs)

    def union(self, other: Iterable[Element]) -> 'FiniteSubset':
        return FiniteSubset.of(self.host, list(self.elements) + list(other))

    @property
    def strict_pairs(self) -> Tuple[Tuple[Element, Element], ...]:
        return tuple((a, b) for a, b in self.ll_pairs if a != b)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "host": self.host.describe(),
            "elements": [self.host.encode(x) for x in self.elements],
        }

    def encoded(self) -> List[Any]:
        return [self.host.encode(x) for x in self.elements]
