"""Extended naturals N̄ = {0, 1, 2, ..., ∞} and their arithmetic."""

import math
from typing import Any, Dict, Iterable, List, Union

from ..core.semigroup import CuSemigroup
from ..utils.codec import INF_TOKEN

INF = math.inf

Ext = Union[int, float]


def is_inf(x: Any) -> bool:
    return isinstance(x, float) and math.isinf(x) and x > 0


def is_ext(x: Any) -> bool:
    if isinstance(x, bool):
        return False
    return (isinstance(x, int) and x >= 0) or is_inf(x)


def ext_add(a: Ext, b: Ext) -> Ext:
    if is_inf(a) or is_inf(b):
        return INF
    return a + b


def ext_mul(a: Ext, b: Ext) -> Ext:
    """Product with 0·∞ = 0."""
    if a == 0 or b == 0:
        return 0
    if is_inf(a) or is_inf(b):
        return INF
    return a * b


def ext_sum(values: Iterable[Ext]) -> Ext:
    total: Ext = 0
    for v in values:
        total = ext_add(total, v)
    return total


def encode_ext(x: Ext) -> Any:
    return INF_TOKEN if is_inf(x) else x


def decode_ext(data: Any) -> Ext:
    if data == INF_TOKEN:
        return INF
    if isinstance(data, int) and not isinstance(data, bool) and data >= 0:
        return data
    raise ValueError(f"Not an extended natural: {data!r}")


class ExtNat(CuSemigroup):
    """N̄: every finite n is compact, ∞ is not."""

    def __init__(self) -> None:
        super().__init__("Nbar")

    @property
    def zero(self) -> Ext:
        return 0

    def add(self, x: Ext, y: Ext) -> Ext:
        return ext_add(x, y)

    def leq(self, x: Ext, y: Ext) -> bool:
        return x <= y

    def way_below(self, x: Ext, y: Ext) -> bool:
        return not is_inf(x) and x <= y

    def basis_level(self, depth: int) -> List[Ext]:
        return list(range(depth + 1)) + [INF]

    def interpolate(self, low: Ext, high: Ext) -> Ext:
        return low

    def encode(self, x: Ext) -> Any:
        return encode_ext(x)

    def decode(self, data: Any) -> Ext:
        return decode_ext(data)

    def contains(self, x: Any) -> bool:
        return is_ext(x)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "extnat"}

    def multiple(self, k: int, x: Ext) -> Ext:
        return ext_mul(k, x)

    def infinite_multiple(self, x: Ext) -> Ext:
        return ext_mul(INF, x)

    def approximating_chain(self, x: Ext, length: int) -> List[Ext]:
        if is_inf(x):
            return list(range(1, length + 1))
        return [x] * length
