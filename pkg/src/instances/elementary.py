"""Elementary semigroups E_n = {0, 1, ..., n, ∞} with saturating addition."""

from typing import Any, Dict, List

from ..core.semigroup import CuSemigroup
from ..utils.errors import StructuralError
from .extnat import INF, Ext, decode_ext, encode_ext, ext_add, ext_mul, is_ext, is_inf


class Elementary(CuSemigroup):
    """E_n; n = 0 gives the two-point semigroup {0, ∞}.

    Every element is compact: increasing sequences in a finite chain are
    eventually constant.
    """

    def __init__(self, n: int) -> None:
        if n < 0:
            raise StructuralError(f"E_n needs n >= 0, got {n}")
        super().__init__("{0,inf}" if n == 0 else f"E_{n}")
        self.n: int = n

    def saturate(self, value: Ext) -> Ext:
        return INF if is_inf(value) or value > self.n else value

    @property
    def zero(self) -> Ext:
        return 0

    @property
    def elements(self) -> List[Ext]:
        return list(range(self.n + 1)) + [INF]

    def add(self, x: Ext, y: Ext) -> Ext:
        return self.saturate(ext_add(x, y))

    def leq(self, x: Ext, y: Ext) -> bool:
        return x <= y

    def way_below(self, x: Ext, y: Ext) -> bool:
        return x <= y

    def basis_level(self, depth: int) -> List[Ext]:
        return self.elements

    def interpolate(self, low: Ext, high: Ext) -> Ext:
        """Least element strictly between, else `low` itself."""
        candidate = ext_add(low, 1)
        if not is_inf(candidate) and candidate <= self.n and candidate < high:
            return candidate
        return low

    def encode(self, x: Ext) -> Any:
        return encode_ext(x)

    def decode(self, data: Any) -> Ext:
        value = decode_ext(data)
        if not self.contains(value):
            raise ValueError(f"{data!r} is not in {self.key}")
        return value

    def contains(self, x: Any) -> bool:
        return is_ext(x) and (is_inf(x) or x <= self.n)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "elementary", "n": self.n}

    def multiple(self, k: int, x: Ext) -> Ext:
        return self.saturate(ext_mul(k, x))

    def infinite_multiple(self, x: Ext) -> Ext:
        return ext_mul(INF, x)


def make_elementary(n: int) -> Elementary:
    if n < 1:
        raise StructuralError(f"make_elementary needs n >= 1, got {n}")
    return Elementary(n)


def make_two_point() -> Elementary:
    """{0, ∞}, the limit of the e_∞ category."""
    return Elementary(0)
