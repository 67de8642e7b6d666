"""Exact piecewise-linear maps with rational data."""

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Sequence, Set, Tuple

from ..utils.codec import decode_number, encode_number
from ..utils.errors import PreconditionError, RepresentationError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PLMap:
    """Continuous PL map through the points (xs[i], ys[i]), xs strictly increasing."""
    xs: Tuple[Fraction, ...]
    ys: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.xs) < 2 or len(self.xs) != len(self.ys):
            raise RepresentationError("A PL map needs at least two breakpoints and one value per breakpoint")
        if any(a >= b for a, b in zip(self.xs, self.xs[1:])):
            raise RepresentationError(f"Breakpoints must increase strictly: {self.xs}")

    @staticmethod
    def from_points(points: Iterable[Tuple[Any, Any]]) -> 'PLMap':
        pairs = [(Fraction(x), Fraction(y)) for x, y in points]
        return PLMap(tuple(x for x, _ in pairs), tuple(y for _, y in pairs))

    @staticmethod
    def through(values: Sequence[Any]) -> 'PLMap':
        """Evenly spaced breakpoints on [0, 1] with the given values."""
        n = len(values) - 1
        return PLMap.from_points((Fraction(i, n), v) for i, v in enumerate(values))

    # ===== Evaluation =====

    @property
    def domain(self) -> Tuple[Fraction, Fraction]:
        return self.xs[0], self.xs[-1]

    @property
    def pieces(self) -> List[Tuple[Fraction, Fraction, Fraction, Fraction]]:
        return [(self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1]) for i in range(len(self.xs) - 1)]

    def __call__(self, t: Any) -> Fraction:
        t = Fraction(t)
        lo, hi = self.domain
        if t < lo or t > hi:
            raise PreconditionError(f"{t} lies outside the domain [{lo}, {hi}]")
        i = min(bisect_right(self.xs, t) - 1, len(self.xs) - 2)
        x0, x1, y0, y1 = self.pieces[i]
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0)

    def image(self) -> Tuple[Fraction, Fraction]:
        return min(self.ys), max(self.ys)

    def is_surjective(self) -> bool:
        """Onto [0, 1]."""
        return self.image() == (ZERO, ONE)

    def has_flats(self) -> bool:
        return any(a == b for a, b in zip(self.ys, self.ys[1:]))

    def preimage_points(self, value: Fraction) -> Set[Fraction]:
        """Points t with f(t) = value lying inside non-constant pieces or at breakpoints."""
        found: Set[Fraction] = set()
        for x0, x1, y0, y1 in self.pieces:
            if y0 == y1:
                if y0 == value:
                    found.update((x0, x1))
                continue
            if min(y0, y1) <= value <= max(y0, y1):
                found.add(x0 + (value - y0) * (x1 - x0) / (y1 - y0))
        return found

    # ===== Algebra =====

    def normalized(self) -> 'PLMap':
        """Drop breakpoints where the slope does not change."""
        xs, ys = [self.xs[0]], [self.ys[0]]
        for i in range(1, len(self.xs) - 1):
            left = (self.ys[i] - ys[-1]) / (self.xs[i] - xs[-1])
            right = (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])
            if left != right:
                xs.append(self.xs[i])
                ys.append(self.ys[i])
        xs.append(self.xs[-1])
        ys.append(self.ys[-1])
        return PLMap(tuple(xs), tuple(ys))

    def compose(self, inner: 'PLMap') -> 'PLMap':
        """self ∘ inner, exact, in normal form."""
        lo, hi = self.domain
        ilo, ihi = inner.image()
        if ilo < lo or ihi > hi:
            raise PreconditionError("Inner map leaves the domain of the outer map")
        ts: Set[Fraction] = set(inner.xs)
        for b in self.xs:
            ts.update(inner.preimage_points(b))
        xs = tuple(sorted(ts))
        return PLMap(xs, tuple(self(inner(t)) for t in xs)).normalized()

    def breakpoint_union(self, other: 'PLMap') -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.xs) | set(other.xs)))

    def encode(self) -> Dict[str, Any]:
        return {"xs": [encode_number(x) for x in self.xs], "ys": [encode_number(y) for y in self.ys]}

    @staticmethod
    def decode(data: Dict[str, Any]) -> 'PLMap':
        return PLMap.from_points(zip((decode_number(x) for x in data["xs"]), (decode_number(y) for y in data["ys"])))

    def __str__(self) -> str:
        return " ".join(f"{x}:{y}" for x, y in zip(self.xs, self.ys))


def identity_map() -> PLMap:
    return PLMap((ZERO, ONE), (ZERO, ONE))


def reflection_map() -> PLMap:
    """t ↦ 1 - t."""
    return PLMap((ZERO, ONE), (ONE, ZERO))


def tent_map() -> PLMap:
    return PLMap.through([0, 1, 0])


def pl_compose(outer: PLMap, inner: PLMap) -> PLMap:
    return outer.compose(inner)


def pl_sup_distance(h1: PLMap, h2: PLMap) -> Fraction:
    """max |h1 - h2|; the difference is linear between common breakpoints."""
    if h1.domain != h2.domain:
        raise PreconditionError("Sup distance needs a common domain")
    return max(abs(h1(t) - h2(t)) for t in h1.breakpoint_union(h2))


def require_surjection(h: PLMap, allow_flats: bool = True) -> PLMap:
    """Check that h is a PL surjection [0, 1] -> [0, 1]."""
    if h.domain != (ZERO, ONE):
        raise PreconditionError(f"Expected a map on [0,1], got domain {h.domain}")
    if not h.is_surjective():
        raise PreconditionError(f"Map {h} is not onto [0,1]")
    if not allow_flats and h.has_flats():
        raise PreconditionError(f"Map {h} has a constancy interval")
    return h
