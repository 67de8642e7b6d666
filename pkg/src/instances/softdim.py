"""Semigroups with a compact and a soft part: S_p, Cu(Z), the soft ray, truncated E_p.

Elements are tagged rationals: Compact(q) and Soft(q). At equal value a
soft element sits below the compact one and is way below it; soft elements
are never compact.
"""

from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Union

from ..core.semigroup import CuSemigroup
from ..utils.codec import decode_number, encode_number
from ..utils.errors import StructuralError
from .extnat import INF, Ext, is_inf

Value = Union[Fraction, float]


class Tagged(NamedTuple):
    soft: bool
    value: Value


def compact(q: Any) -> Tagged:
    return Tagged(False, INF if is_inf(q) else Fraction(q))


def soft(q: Any) -> Tagged:
    return Tagged(True, INF if is_inf(q) else Fraction(q))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _is_power_of(n: int, base: int) -> bool:
    if base == 1:
        return n == 1
    while n % base == 0:
        n //= base
    return n == 1


def grid_between(a: Value, b: Value, base: int) -> Fraction:
    """Coarsest k/base^L with a < k/base^L < b (smallest k at that level)."""
    if is_inf(b):
        return Fraction(int(a) + 1)
    level = 0
    while True:
        scale = base ** level
        k = int(a * scale) + 1
        candidate = Fraction(k, scale)
        if candidate < b:
            return candidate
        level += 1


class SoftDim(CuSemigroup):
    """N[1/p] ⊔ (0, ∞] with the mixed order and sum rules.

    `compact_base` fixes the compact part: p for S_p, 1 for N (Cu(Z)),
    None for the soft ray [0, ∞] whose only compact element is 0.
    `grid_base` fixes soft basis denominators and interpolants.
    """

    def __init__(self, key: str, compact_base: Optional[int], grid_base: int) -> None:
        super().__init__(key)
        self.compact_base: Optional[int] = compact_base
        self.grid_base: int = grid_base

    @property
    def zero(self) -> Tagged:
        return Tagged(False, Fraction(0))

    # ===== Order and sum =====

    def leq(self, x: Tagged, y: Tagged) -> bool:
        if x.value != y.value:
            return x.value < y.value
        return not (not x.soft and y.soft)

    def way_below(self, x: Tagged, y: Tagged) -> bool:
        if x.value != y.value:
            return x.value < y.value
        return not y.soft

    def add(self, x: Tagged, y: Tagged) -> Tagged:
        total = INF if is_inf(x.value) or is_inf(y.value) else x.value + y.value
        if not x.soft and not y.soft:
            return Tagged(False, total)
        return Tagged(True, total)

    def multiple(self, k: int, x: Tagged) -> Tagged:
        if k == 0 or x.value == 0:
            return self.zero
        return Tagged(x.soft, INF if is_inf(x.value) else k * x.value)

    def infinite_multiple(self, x: Tagged) -> Tagged:
        return self.zero if x.value == 0 else soft(INF)

    # ===== Presentation =====

    def is_compact_value(self, q: Fraction) -> bool:
        if q == 0:
            return True
        if self.compact_base is None or q < 0:
            return False
        return _is_power_of(q.denominator, self.compact_base)

    def contains(self, x: Any) -> bool:
        if not isinstance(x, Tagged):
            return False
        if x.soft:
            return is_inf(x.value) or (isinstance(x.value, Fraction) and x.value > 0)
        return isinstance(x.value, Fraction) and self.is_compact_value(x.value)

    def basis_level(self, depth: int) -> List[Tagged]:
        elements: List[Tagged] = [soft(INF)]
        scale = self.grid_base ** depth
        elements.extend(soft(Fraction(k, scale)) for k in range(1, depth * scale + 1))
        if self.compact_base is not None:
            cscale = self.compact_base ** depth
            elements.extend(compact(Fraction(k, cscale)) for k in range(depth * cscale + 1))
        return elements

    def interpolate(self, low: Tagged, high: Tagged) -> Tagged:
        if low.value == high.value:
            return high
        return soft(grid_between(low.value, high.value, self.grid_base))

    def approximating_chain(self, x: Tagged, length: int) -> List[Tagged]:
        if not x.soft:
            return [x] * length
        if is_inf(x.value):
            return [soft(l + 1) for l in range(length)]
        b = self.grid_base
        return [soft(x.value - x.value / b ** (l + 1)) for l in range(length)]

    def encode(self, x: Tagged) -> Any:
        return {"s" if x.soft else "c": encode_number(x.value)}

    def decode(self, data: Any) -> Tagged:
        if not isinstance(data, dict) or len(data) != 1:
            raise ValueError(f"Expected a tagged value, got {data!r}")
        tag, raw = next(iter(data.items()))
        value = decode_number(raw)
        element = soft(value) if tag == "s" else compact(value)
        if not self.contains(element):
            raise ValueError(f"{data!r} is not in {self.key}")
        return element

    def describe(self) -> Dict[str, Any]:
        if self.key == "Cu(Z)":
            return {"kind": "cu_z"}
        if self.compact_base is None:
            return {"kind": "soft_ray"}
        return {"kind": "softdim", "p": self.compact_base}

    def value_of(self, x: Tagged) -> Value:
        return x.value

    def numeric_chain_element(self, v: Fraction) -> Tagged:
        """The soft element of size v (0 for v = 0)."""
        return self.zero if v == 0 else soft(v)


class TruncatedEp(SoftDim):
    """{x in S_p : x <= 1_c} ∪ {∞}; sums beyond 1_c saturate to ∞."""

    def __init__(self, p: int) -> None:
        super().__init__(f"Ep_{p}", compact_base=p, grid_base=p)
        self.p: int = p

    @property
    def top(self) -> Tagged:
        return compact(INF)

    @property
    def one(self) -> Tagged:
        return compact(1)

    def add(self, x: Tagged, y: Tagged) -> Tagged:
        if x == self.top or y == self.top:
            return self.top
        total = super().add(x, y)
        if not self.leq(total, self.one):
            return self.top
        return total

    def multiple(self, k: int, x: Tagged) -> Tagged:
        if x == self.top:
            return self.zero if k == 0 else self.top
        total = super().multiple(k, x)
        return total if self.leq(total, self.one) else self.top

    def infinite_multiple(self, x: Tagged) -> Tagged:
        return self.zero if x.value == 0 else self.top

    def contains(self, x: Any) -> bool:
        if x == self.top:
            return True
        if not SoftDim.contains(self, x) or is_inf(x.value):
            return False
        return x.value <= 1

    def basis_level(self, depth: int) -> List[Tagged]:
        scale = self.p ** depth
        elements: List[Tagged] = [self.top]
        elements.extend(soft(Fraction(k, scale)) for k in range(1, scale + 1))
        elements.extend(compact(Fraction(k, scale)) for k in range(scale + 1))
        return elements

    def interpolate(self, low: Tagged, high: Tagged) -> Tagged:
        if high == self.top:
            return self.top if low == self.top else self.one
        return super().interpolate(low, high)

    def approximating_chain(self, x: Tagged, length: int) -> List[Tagged]:
        if x == self.top:
            return [x] * length
        return super().approximating_chain(x, length)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "truncated_ep", "p": self.p}


# ===== Factories and stage identifications =====

def make_softdim(p: int) -> SoftDim:
    if not is_prime(p):
        raise StructuralError(f"S_p needs a prime p, got {p}")
    return SoftDim(f"S_{p}", compact_base=p, grid_base=p)


def make_truncated_ep(p: int) -> TruncatedEp:
    if not is_prime(p):
        raise StructuralError(f"E_p needs a prime p, got {p}")
    return TruncatedEp(p)


def make_cu_z() -> SoftDim:
    """N ⊔ (0, ∞]."""
    return SoftDim("Cu(Z)", compact_base=1, grid_base=2)


def make_soft_ray() -> SoftDim:
    """[0, ∞] with every nonzero element soft."""
    return SoftDim("[0,inf]", compact_base=None, grid_base=2)


def softdim_embed_stage(S: SoftDim, i: int, x: Ext) -> Tagged:
    """Stage-i element x of (N̄, ×p) as Compact(x / p^i); ∞ goes to Soft(∞)."""
    if is_inf(x):
        return soft(INF)
    return compact(Fraction(x, S.compact_base ** i))


def truncated_embed_stage(E: TruncatedEp, i: int, x: Ext) -> Tagged:
    """Stage-i element x of (E_{p^i}, ×p) as Compact(x / p^i); ∞ is the top."""
    if is_inf(x):
        return E.top
    return compact(Fraction(x, E.p ** i))
