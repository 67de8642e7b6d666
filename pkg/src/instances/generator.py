"""The generator G: increasing lsc step functions on [0, 1] vanishing at 0.

An element f is determined by its thresholds: {f >= k} = (s_k, 1], with
s_1 <= s_2 <= ... < 1. A function that is infinite on (s_∞, 1] stores s_∞
separately and every later threshold equals it.
"""

from fractions import Fraction
from heapq import merge
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple

from ..core.semigroup import CuSemigroup
from ..utils.codec import decode_number, encode_number
from ..utils.errors import RepresentationError
from .extnat import INF, Ext
from .steplsc import Step, ZERO, ONE, from_evaluator


class Gen(NamedTuple):
    thresholds: Tuple[Fraction, ...]
    infinite: Optional[Fraction]


def canonical(thresholds: Iterable[Any], infinite: Optional[Any] = None) -> Gen:
    inf = None if infinite is None else Fraction(infinite)
    if inf is not None and inf >= ONE:
        inf = None
    values = sorted(Fraction(t) for t in thresholds)
    if any(t < ZERO for t in values) or (inf is not None and inf < ZERO):
        raise RepresentationError("Thresholds must lie in [0, 1)")
    values = [t for t in values if t < ONE]
    if inf is not None:
        values = [min(t, inf) for t in values]
        while values and values[-1] == inf:
            values.pop()
    return Gen(tuple(values), inf)


def chain_generator(t: Any) -> Gen:
    """1_{(t,1]}; zero once t >= 1."""
    return canonical([t])


def threshold(f: Gen, k: int) -> Fraction:
    """s_k (1-based); 1 stands for the empty level set."""
    if k <= len(f.thresholds):
        return f.thresholds[k - 1]
    return f.infinite if f.infinite is not None else ONE


def as_step(f: Gen) -> Step:
    """The same function as a general step function on [0, 1]."""

    def count_below(t: Fraction) -> Ext:
        if f.infinite is not None and f.infinite < t:
            return INF
        return sum(1 for s in f.thresholds if s < t)

    breaks = list(f.thresholds) + ([f.infinite] if f.infinite is not None else [])
    return from_evaluator(breaks, count_below, lambda x, y: count_below((x + y) / 2))


class GeneratorG(CuSemigroup):
    """f <= g iff s_k(g) <= s_k(f) for all k; f << g iff f is finite and s_k(g) < s_k(f)."""

    def __init__(self) -> None:
        super().__init__("G")

    @property
    def zero(self) -> Gen:
        return Gen((), None)

    @property
    def top(self) -> Gen:
        return Gen((), ZERO)

    def add(self, x: Gen, y: Gen) -> Gen:
        infs = [s for s in (x.infinite, y.infinite) if s is not None]
        return canonical(merge(x.thresholds, y.thresholds), min(infs) if infs else None)

    def _depth(self, x: Gen, y: Gen) -> int:
        return max(len(x.thresholds), len(y.thresholds)) + 1

    def leq(self, x: Gen, y: Gen) -> bool:
        return all(threshold(y, k) <= threshold(x, k) for k in range(1, self._depth(x, y) + 1))

    def way_below(self, x: Gen, y: Gen) -> bool:
        if x.infinite is not None:
            return False
        return all(threshold(y, k) < s for k, s in enumerate(x.thresholds, start=1))

    def basis_level(self, depth: int) -> List[Gen]:
        scale = 2 ** depth
        cuts = [Fraction(j, scale) for j in range(scale)]
        singles = [canonical([t]) for t in cuts]
        pairs = [canonical([a, b]) for i, a in enumerate(cuts) for b in cuts[i:]]
        return singles + pairs + [self.top]

    def interpolate(self, low: Gen, high: Gen) -> Gen:
        return canonical([(threshold(high, k) + s) / 2 for k, s in enumerate(low.thresholds, start=1)])

    def approximating_chain(self, x: Gen, length: int) -> List[Gen]:
        chain = []
        for l in range(length):
            scale = Fraction(1, 2 ** (l + 1))
            values = [s + (ONE - s) * scale for s in x.thresholds]
            if x.infinite is not None:
                values += [x.infinite + (ONE - x.infinite) * scale] * (l + 1)
            chain.append(canonical(values))
        return chain

    def multiple(self, k: int, x: Gen) -> Gen:
        if k == 0:
            return self.zero
        return canonical([s for s in x.thresholds for _ in range(k)], x.infinite)

    def infinite_multiple(self, x: Gen) -> Gen:
        if x == self.zero:
            return x
        return Gen((), threshold(x, 1))

    def numeric_chain_element(self, v: Fraction) -> Gen:
        """1_{(1-v,1]}, the chain generator of size v."""
        return chain_generator(ONE - v) if v > 0 else self.zero

    def encode(self, x: Gen) -> Any:
        return {
            "thresholds": [encode_number(t) for t in x.thresholds],
            "inf": None if x.infinite is None else encode_number(x.infinite),
        }

    def decode(self, data: Any) -> Gen:
        inf = data.get("inf")
        return canonical([decode_number(t) for t in data["thresholds"]], None if inf is None else decode_number(inf))

    def contains(self, x: Any) -> bool:
        if not isinstance(x, Gen):
            return False
        try:
            return canonical(x.thresholds, x.infinite) == x
        except RepresentationError:
            return False

    def describe(self) -> Dict[str, Any]:
        return {"kind": "generator"}


def make_generator() -> GeneratorG:
    return GeneratorG()
