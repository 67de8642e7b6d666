"""The abstract Cu-semigroup interface.

A presentation exposes canonical elements (hashable Python values whose
equality is semigroup equality), the monoid operation, the order, the
way-below relation, a nested basis enumeration and a constructive
interpolant for x' << x.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..utils.codec import dumps
from ..utils.errors import PreconditionError, RepresentationError, StructuralError

Element = Hashable


class CuSemigroup(ABC):
    """Effectively presented positively ordered monoid with decidable << ."""

    def __init__(self, key: str) -> None:
        self.key: str = key
        self._basis_cache: Dict[int, Tuple[Element, ...]] = {}

    # ===== Presentation =====

    @property
    @abstractmethod
    def zero(self) -> Element:
        ...

    @abstractmethod
    def add(self, x: Element, y: Element) -> Element:
        ...

    @abstractmethod
    def leq(self, x: Element, y: Element) -> bool:
        ...

    @abstractmethod
    def way_below(self, x: Element, y: Element) -> bool:
        ...

    @abstractmethod
    def basis_level(self, depth: int) -> Iterable[Element]:
        """Raw elements of B_depth; nesting is enforced by `basis`."""
        ...

    @abstractmethod
    def interpolate(self, low: Element, high: Element) -> Element:
        """Some z with low << z << high; only called when low << high."""
        ...

    @abstractmethod
    def encode(self, x: Element) -> Any:
        ...

    @abstractmethod
    def decode(self, data: Any) -> Element:
        ...

    @abstractmethod
    def contains(self, x: Any) -> bool:
        ...

    def describe(self) -> Dict[str, Any]:
        """Descriptor used by archives to rebuild the presentation."""
        return {"kind": "opaque", "key": self.key}

    # ===== Derived structure =====

    @property
    def carrier_key(self) -> str:
        """Identifies the underlying semigroup regardless of basis enumeration."""
        return self.key

    def basis(self, depth: int) -> Tuple[Element, ...]:
        """B_depth, nested in depth and sorted by canonical encoding."""
        if depth < 0:
            raise PreconditionError(f"Negative basis depth {depth}")
        cached = self._basis_cache.get(depth)
        if cached is not None:
            return cached
        previous = self.basis(depth - 1) if depth > 0 else ()
        elements = set(previous)
        elements.update(self.basis_level(depth))
        elements.add(self.zero)
        result = tuple(sorted(elements, key=self.order_key))
        self._basis_cache[depth] = result
        return result

    def order_key(self, x: Element) -> str:
        """Canonical encoding; the tie-break for every "first witness" rule."""
        return dumps(self.encode(x))

    def require(self, x: Any) -> Element:
        if not self.contains(x):
            raise StructuralError(f"{x!r} is not an element of {self.key}")
        return x

    def is_compact(self, x: Element) -> bool:
        return self.way_below(x, x)

    def equal(self, x: Element, y: Element) -> bool:
        return self.leq(x, y) and self.leq(y, x)

    def sum(self, xs: Iterable[Element]) -> Element:
        total = self.zero
        for x in xs:
            total = self.add(total, x)
        return total

    def multiple(self, k: int, x: Element) -> Element:
        """k·x for a finite k >= 0 by binary expansion."""
        if k < 0:
            raise PreconditionError(f"Negative multiple {k}")
        result = self.zero
        power = x
        while k:
            if k & 1:
                result = self.add(result, power)
            power = self.add(power, power)
            k >>= 1
        return result

    def infinite_multiple(self, x: Element) -> Element:
        """∞·x = sup_n n·x, when the presentation has a closed form."""
        raise RepresentationError(f"{self.key} has no closed form for ∞·x")

    def level_of(self, x: Element, cap: int) -> Optional[int]:
        """Least n <= cap with x in B_n."""
        for n in range(cap + 1):
            if x in self.basis(n):
                return n
        return None

    def approximating_chain(self, x: Element, length: int) -> List[Element]:
        """A <<-increasing chain f_0 << f_1 << ... with supremum x.

        Compact elements use the constant chain; presentations with
        non-compact elements override this.
        """
        if self.is_compact(x):
            return [x] * length
        raise RepresentationError(f"{self.key} cannot approximate {x!r} by a chain")

    def maximum(self, xs: Sequence[Element]) -> Element:
        """Largest element of a finite chain (the supremum of a finite chain)."""
        if not xs:
            return self.zero
        best = xs[0]
        for x in xs[1:]:
            if self.leq(best, x):
                best = x
            elif not self.leq(x, best):
                raise PreconditionError(f"{best!r} and {x!r} are not comparable in {self.key}")
        return best

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CuSemigroup) and self.carrier_key == other.carrier_key

    def __hash__(self) -> int:
        return hash(self.carrier_key)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.key}>"


class Reindexed(CuSemigroup):
    """The same semigroup seen through another basis enumeration.

    B'_n = B_{stride·n + offset}; everything else delegates.
    """

    def __init__(self, base: CuSemigroup, stride: int = 2, offset: int = 0) -> None:
        if stride < 1 or offset < 0:
            raise PreconditionError("Reindexing needs stride >= 1 and offset >= 0")
        super().__init__(f"{base.key}@{stride}n+{offset}")
        self.base: CuSemigroup = base
        self.stride: int = stride
        self.offset: int = offset

    @property
    def carrier_key(self) -> str:
        return self.base.carrier_key

    @property
    def zero(self) -> Element:
        return self.base.zero

    def add(self, x: Element, y: Element) -> Element:
        return self.base.add(x, y)

    def leq(self, x: Element, y: Element) -> bool:
        return self.base.leq(x, y)

    def way_below(self, x: Element, y: Element) -> bool:
        return self.base.way_below(x, y)

    def basis_level(self, depth: int) -> Iterable[Element]:
        return self.base.basis(self.stride * depth + self.offset)

    def interpolate(self, low: Element, high: Element) -> Element:
        return self.base.interpolate(low, high)

    def encode(self, x: Element) -> Any:
        return self.base.encode(x)

    def decode(self, data: Any) -> Element:
        return self.base.decode(data)

    def contains(self, x: Any) -> bool:
        return self.base.contains(x)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "reindexed", "base": self.base.describe(), "stride": self.stride, "offset": self.offset}

    def infinite_multiple(self, x: Element) -> Element:
        return self.base.infinite_multiple(x)

    def approximating_chain(self, x: Element, length: int) -> List[Element]:
        return self.base.approximating_chain(x, length)


def interpolate_checked(S: CuSemigroup, low: Element, high: Element) -> Element:
    """Chain interpolator with its contract enforced."""
    if not S.way_below(low, high):
        raise PreconditionError(f"Cannot interpolate: {low!r} is not way below {high!r} in {S.key}")
    z = S.interpolate(low, high)
    if not (S.way_below(low, z) and S.way_below(z, high)):
        raise RepresentationError(f"{S.key} returned a bad interpolant {z!r} for {low!r} << {high!r}")
    return z
