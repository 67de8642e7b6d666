"""Morphisms between presented Cu-semigroups."""

from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Iterable, Mapping, Optional

from ..utils.errors import RepresentationError, StructuralError
from .semigroup import CuSemigroup, Element


class CuMorphism(ABC):
    """A monoid map S -> T given by a rule on canonical elements.

    Subclasses evaluate through their generator data (a scalar, a matrix,
    a PL map, a table) and describe themselves for archives.
    """

    def __init__(self, domain: CuSemigroup, codomain: CuSemigroup, label: str = "") -> None:
        self.domain: CuSemigroup = domain
        self.codomain: CuSemigroup = codomain
        self.label: str = label or type(self).__name__

    @abstractmethod
    def apply(self, x: Element) -> Element:
        ...

    def __call__(self, x: Element) -> Element:
        return self.apply(x)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "opaque", "label": self.label}

    def compose(self, inner: 'CuMorphism') -> 'CuMorphism':
        """self ∘ inner."""
        return compose(self, inner)

    def agrees_with(self, other: 'CuMorphism', elements: Iterable[Element]) -> bool:
        return all(self.apply(x) == other.apply(x) for x in elements)

    def __repr__(self) -> str:
        return f"<{self.label}: {self.domain.key} -> {self.codomain.key}>"


class IdentityMorphism(CuMorphism):
    def __init__(self, S: CuSemigroup) -> None:
        super().__init__(S, S, f"id_{S.key}")

    def apply(self, x: Element) -> Element:
        return x

    def describe(self) -> Dict[str, Any]:
        return {"kind": "identity", "object": self.domain.describe()}


class ComposedMorphism(CuMorphism):
    def __init__(self, outer: CuMorphism, inner: CuMorphism) -> None:
        super().__init__(inner.domain, outer.codomain, f"{outer.label}∘{inner.label}")
        self.outer: CuMorphism = outer
        self.inner: CuMorphism = inner

    def apply(self, x: Element) -> Element:
        return self.outer.apply(self.inner.apply(x))

    def describe(self) -> Dict[str, Any]:
        return {"kind": "compose", "outer": self.outer.describe(), "inner": self.inner.describe()}


class FunctionMorphism(CuMorphism):
    """Closed-form rule; `params` is what an archive needs to rebuild it."""

    def __init__(
        self,
        domain: CuSemigroup,
        codomain: CuSemigroup,
        rule: Callable[[Element], Element],
        label: str,
        params: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(domain, codomain, label)
        self._rule = rule
        self.params: Dict[str, Any] = params or {}

    def apply(self, x: Element) -> Element:
        return self._rule(x)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "rule", "label": self.label, "params": self.params}


class TableMorphism(CuMorphism):
    """Explicit value table over a finite carrier."""

    def __init__(self, domain: CuSemigroup, codomain: CuSemigroup, table: Mapping[Element, Element], label: str = "table") -> None:
        super().__init__(domain, codomain, label)
        self.table: Dict[Element, Element] = dict(table)

    def apply(self, x: Element) -> Element:
        try:
            return self.table[x]
        except KeyError:
            raise RepresentationError(f"{self.label} has no value at {x!r}")

    def describe(self) -> Dict[str, Any]:
        rows = sorted(self.table.items(), key=lambda kv: self.domain.order_key(kv[0]))
        return {
            "kind": "table",
            "domain": self.domain.describe(),
            "codomain": self.codomain.describe(),
            "rows": [[self.domain.encode(x), self.codomain.encode(y)] for x, y in rows],
        }


def compose(outer: CuMorphism, inner: CuMorphism) -> CuMorphism:
    """outer ∘ inner; identities are absorbed."""
    if inner.codomain != outer.domain:
        raise StructuralError(
            f"Cannot compose {outer.label} after {inner.label}: "
            f"{inner.codomain.key} is not {outer.domain.key}"
        )
    if isinstance(outer, IdentityMorphism):
        return inner
    if isinstance(inner, IdentityMorphism):
        return outer
    composite = getattr(outer, "compose_closed", None)
    if composite is not None:
        closed = composite(inner)
        if closed is not None:
            return closed
    return ComposedMorphism(outer, inner)
