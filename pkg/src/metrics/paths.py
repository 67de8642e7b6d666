"""Cu-paths: finitely presented elements of Th(S) = Hom(G, S).

A path τ is read through y_t = τ(1_{(t,1]}) for t in [0, 1]; y_t is zero
from t = 1 on. Three exact presentations are kept:

- StepPath, compact values held on [t_j, t_{j+1});
- AffinePath, the chain element of size g(t) for a decreasing PL map g,
  on targets with a numeric chain (soft rays, S_p, Cu(Z) and G);
- BallPath, 1_{h^{-1}(B(c, 1 - t))} in Lsc([0,1], N̄).

Composing a path with a morphism keeps the presentation whenever the
morphism has an exact action on it.
"""

from abc import ABC, abstractmethod
from bisect import bisect_right
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from ..core.comparison import comparison_failure
from ..core.morphism import ComposedMorphism, CuMorphism, IdentityMorphism
from ..core.semigroup import CuSemigroup, Element
from ..core.subset import FiniteSubset
from ..hom.pl_induced import PLInducedMorphism, pullback_step
from ..hom.scaling import ScalingMorphism
from ..hom.shift import ShiftMorphism
from ..instances.generator import GeneratorG
from ..instances.softdim import SoftDim, TruncatedEp
from ..instances.steplsc import IntervalLsc, ball
from ..pl.plmap import PLMap, identity_map
from ..utils.codec import encode_number
from ..utils.errors import PreconditionError, RepresentationError, StructuralError

ZERO = Fraction(0)
ONE = Fraction(1)


class CuPath(ABC):
    """A Cu-morphism G -> target, known through t ↦ y_t."""

    def __init__(self, target: CuSemigroup, label: str) -> None:
        self.target: CuSemigroup = target
        self.label: str = label

    @abstractmethod
    def value(self, t: Any) -> Element:
        ...

    @abstractmethod
    def critical_points(self) -> Tuple[Fraction, ...]:
        """Parameters where the value can change shape; always holds 0 and 1."""

    @abstractmethod
    def push(self, alpha: CuMorphism) -> 'CuPath':
        """α ∘ τ."""

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        ...

    def __call__(self, t: Any) -> Element:
        return self.value(t)

    def _check_push(self, alpha: CuMorphism) -> None:
        if alpha.domain != self.target:
            raise StructuralError(f"{alpha.label} starts at {alpha.domain.key}, the path ends in {self.target.key}")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} -> {self.target.key}>"


# ===== Step paths =====

class StepPath(CuPath):
    """values[j] on [breaks[j], breaks[j+1]); zero from breaks[-1] on.

    A constructed path needs compact values, since y_t << y_r within a
    piece. Images under morphisms skip that check.
    """

    def __init__(
        self,
        target: CuSemigroup,
        breaks: Sequence[Any],
        values: Sequence[Element],
        label: str = "step",
        require_compact: bool = True,
    ) -> None:
        super().__init__(target, label)
        b = tuple(Fraction(t) for t in breaks)
        v = tuple(target.require(x) for x in values)
        if len(b) != len(v) + 1:
            raise RepresentationError("Need one value per piece")
        if b[0] != ZERO or b[-1] > ONE or any(x >= y for x, y in zip(b, b[1:])):
            raise RepresentationError(f"Breakpoints must increase from 0 and stay in [0, 1]: {b}")
        for high, low in zip(v, v[1:]):
            if not target.leq(low, high):
                raise PreconditionError(f"Path values must decrease: {target.encode(low)} after {target.encode(high)}")
        if require_compact:
            for x in v:
                if not target.is_compact(x):
                    raise RepresentationError(f"Step values must be compact; {target.encode(x)} is not")
        self.breaks, self.values = self._normalize(b, v)

    def _normalize(self, b: Tuple[Fraction, ...], v: Tuple[Element, ...]) -> Tuple[Tuple[Fraction, ...], Tuple[Element, ...]]:
        breaks, values = [b[0]], []
        for j, x in enumerate(v):
            if x == self.target.zero:
                break
            if values and values[-1] == x:
                breaks[-1] = b[j + 1]
                continue
            values.append(x)
            breaks.append(b[j + 1])
        return tuple(breaks), tuple(values)

    def value(self, t: Any) -> Element:
        t = Fraction(t)
        if t < ZERO:
            raise PreconditionError(f"Path parameter {t} is negative")
        if t >= self.breaks[-1]:
            return self.target.zero
        return self.values[bisect_right(self.breaks, t) - 1]

    def critical_points(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.breaks) | {ZERO, ONE}))

    def push(self, alpha: CuMorphism) -> 'StepPath':
        self._check_push(alpha)
        values = [alpha.apply(x) for x in self.values]
        return StepPath(alpha.codomain, self.breaks, values, f"{alpha.label}∘{self.label}", require_compact=False)

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": "step",
            "label": self.label,
            "breaks": [encode_number(t) for t in self.breaks],
            "values": [self.target.encode(x) for x in self.values],
        }


def constant_path(S: CuSemigroup, c: Element, label: str = "const") -> StepPath:
    """1_{(t,1]} ↦ c for every t < 1."""
    return StepPath(S, (ZERO, ONE), (c,), label)


# ===== Chain (affine) paths =====

def has_chain(S: CuSemigroup) -> bool:
    """Targets whose numeric chain elements form an order-embedded ray."""
    return isinstance(S, GeneratorG) or (isinstance(S, SoftDim) and not isinstance(S, TruncatedEp))


def chain_size(S: CuSemigroup, x: Element) -> Optional[Fraction]:
    """v with x equal to the chain element of size v, if x lies on the chain."""
    if x == S.zero:
        return ZERO
    if isinstance(S, GeneratorG):
        if x.infinite is None and len(x.thresholds) == 1:
            return ONE - x.thresholds[0]
        return None
    if isinstance(S, SoftDim) and x.soft and isinstance(x.value, Fraction):
        return x.value
    return None


def _lowered(g: PLMap, amount: Fraction) -> PLMap:
    """max(g - amount, 0), exact."""
    xs, ys = [g.xs[0]], [max(g.ys[0] - amount, ZERO)]
    for x0, x1, y0, y1 in g.pieces:
        if y0 - amount > 0 > y1 - amount:
            xs.append(x0 + (y0 - amount) * (x1 - x0) / (y0 - y1))
            ys.append(ZERO)
        xs.append(x1)
        ys.append(max(y1 - amount, ZERO))
    return PLMap(tuple(xs), tuple(ys))


def _scaled(g: PLMap, factor: Fraction) -> PLMap:
    return PLMap(g.xs, tuple(factor * y for y in g.ys))


def chain_action(alpha: CuMorphism) -> Callable[[PLMap], PLMap]:
    """How α moves the size function of a chain path."""
    if isinstance(alpha, IdentityMorphism):
        return lambda g: g
    if isinstance(alpha, ShiftMorphism):
        return lambda g: _lowered(g, alpha.amount)
    if isinstance(alpha, ScalingMorphism) and isinstance(alpha.domain, SoftDim):
        return lambda g: _scaled(g, alpha.factor)
    if isinstance(alpha, ComposedMorphism):
        inner, outer = chain_action(alpha.inner), chain_action(alpha.outer)
        return lambda g: outer(inner(g))
    raise RepresentationError(f"{alpha.label} has no exact action on chain paths")


class AffinePath(CuPath):
    """y_t = the chain element of size g(t); g decreases strictly while positive and g(1) = 0."""

    def __init__(self, target: CuSemigroup, g: PLMap, label: str = "affine") -> None:
        super().__init__(target, label)
        if not has_chain(target):
            raise StructuralError(f"{target.key} has no numeric chain")
        if g.domain != (ZERO, ONE) or g.ys[-1] != ZERO:
            raise RepresentationError(f"Size function must run over [0, 1] and end at 0: {g}")
        for a, b in zip(g.ys, g.ys[1:]):
            if b > a or (b == a and a != ZERO):
                raise RepresentationError(f"Size function must decrease strictly while positive: {g}")
        if isinstance(target, GeneratorG) and g.ys[0] > ONE:
            raise RepresentationError("Chain elements of G have size at most 1")
        self.g: PLMap = g.normalized()

    def size(self, t: Any) -> Fraction:
        t = Fraction(t)
        return ZERO if t >= ONE else self.g(t)

    def value(self, t: Any) -> Element:
        return self.target.numeric_chain_element(self.size(t))

    def level_time(self, v: Fraction) -> Fraction:
        """First t with g(t) <= v."""
        xs, ys = self.g.xs, self.g.ys
        if v >= ys[0]:
            return ZERO
        for i in range(len(xs) - 1):
            if ys[i] > v >= ys[i + 1]:
                return xs[i] + (ys[i] - v) * (xs[i + 1] - xs[i]) / (ys[i] - ys[i + 1])
        return ONE

    def critical_points(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.g.xs) | {ZERO, ONE}))

    def push(self, alpha: CuMorphism) -> 'AffinePath':
        self._check_push(alpha)
        return AffinePath(alpha.codomain, chain_action(alpha)(self.g), f"{alpha.label}∘{self.label}")

    def describe(self) -> Dict[str, Any]:
        return {"kind": "affine", "label": self.label, "size": self.g.encode()}


# ===== Ball paths =====

def _inducing_map(alpha: CuMorphism) -> PLMap:
    if isinstance(alpha, PLInducedMorphism):
        return alpha.h
    if isinstance(alpha, IdentityMorphism) and isinstance(alpha.domain, IntervalLsc):
        return identity_map()
    raise RepresentationError(f"{alpha.label} is not induced by a PL map")


class BallPath(CuPath):
    """y_t = 1_{h^{-1}(B(c, 1 - t))}; with h = id, the ball path centred at c."""

    def __init__(self, centre: Any, h: Optional[PLMap] = None, target: Optional[IntervalLsc] = None, label: Optional[str] = None) -> None:
        self.centre: Fraction = Fraction(centre)
        if not ZERO <= self.centre <= ONE:
            raise PreconditionError(f"Centre {self.centre} lies outside [0, 1]")
        self.h: PLMap = h or identity_map()
        super().__init__(target or IntervalLsc(), label or f"ball@{self.centre}")

    def value(self, t: Any) -> Element:
        t = Fraction(t)
        if t >= ONE:
            return self.target.zero
        f = ball(self.centre, ONE - t)
        return f if self.h == identity_map() else pullback_step(f, self.h)

    def critical_points(self) -> Tuple[Fraction, ...]:
        return tuple(sorted({ZERO, ONE, self.centre, ONE - self.centre}))

    def push(self, alpha: CuMorphism) -> 'BallPath':
        self._check_push(alpha)
        if isinstance(alpha, ComposedMorphism):
            return self.push(alpha.inner).push(alpha.outer)
        g = _inducing_map(alpha)
        return BallPath(self.centre, self.h.compose(g), alpha.codomain, f"{alpha.label}∘{self.label}")

    def describe(self) -> Dict[str, Any]:
        return {"kind": "ball", "label": self.label, "centre": encode_number(self.centre), "h": self.h.encode()}


# ===== Construction from chains =====

def path_from_chain(S: CuSemigroup, chain: Sequence[Element], label: str = "chain") -> CuPath:
    """τ with τ(1_{(1/n,1]}) = x_n for 2 <= n <= N and τ(1_{(1,1]}) = 0.

    Compact chains give step paths, constant x_N below 1/N. Chains on a
    numeric ray give affine paths, extended linearly below 1/N.
    """
    items = [S.require(x) for x in chain]
    if len(items) < 2:
        raise PreconditionError("A chain needs at least two elements")
    for a, b in zip(items, items[1:]):
        if not S.way_below(a, b):
            raise PreconditionError(f"Chain is not <<-increasing at {S.encode(a)}, {S.encode(b)}")
    N = len(items)
    if all(S.is_compact(x) for x in items[1:]):
        breaks = [ZERO] + [Fraction(1, n) for n in range(N, 0, -1)]
        values = [items[N - 1]] + [items[n - 1] for n in range(N, 1, -1)]
        return StepPath(S, breaks, values, label)
    if not has_chain(S):
        raise RepresentationError(f"Chain in {S.key} has non-compact elements and no numeric ray to carry them")
    sizes = [chain_size(S, x) for x in items]
    if any(q is None for q in sizes):
        raise RepresentationError(f"Chain in {S.key} leaves the numeric ray")
    top = sizes[-1] + (sizes[-1] - sizes[-2]) * (N - 1)
    if isinstance(S, GeneratorG):
        top = min(top, ONE)
    points = [(ZERO, top)] + [(Fraction(1, n), sizes[n - 1]) for n in range(N, 1, -1)] + [(ONE, ZERO)]
    return AffinePath(S, PLMap.from_points(points), label)


def discriminating_path(alpha: CuMorphism, beta: CuMorphism, F: FiniteSubset, eps: Any) -> Optional[StepPath]:
    """x on [0, ε) and x' on [ε, 1) for the first pair x' << x of F breaking α ≃_F β.

    Then α∘τ and β∘τ are at d_G-distance 1; None when α ≃_F β.
    """
    eps = Fraction(eps)
    if not ZERO < eps < ONE:
        raise PreconditionError(f"ε must lie in (0, 1), got {eps}")
    failure = comparison_failure(alpha, beta, F)
    if failure is None:
        return None
    low, high = failure
    return StepPath(F.host, (ZERO, eps, ONE), (high, low), "discriminating")
