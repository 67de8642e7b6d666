"""Rebuild semigroup presentations from their archive descriptors."""

from fractions import Fraction
from typing import Any, Callable, Dict

from ..core.semigroup import CuSemigroup, Reindexed
from ..utils.codec import decode_number
from ..utils.errors import RepresentationError
from .elementary import Elementary
from .extnat import ExtNat
from .generator import GeneratorG
from .simplicial import Simplicial
from .softdim import make_cu_z, make_soft_ray, make_softdim, make_truncated_ep
from .steplsc import IntervalLsc
from .table import FiniteTableSemigroup


def _table(d: Dict[str, Any]) -> CuSemigroup:
    return FiniteTableSemigroup(
        d["key"],
        d["elements"],
        d["zero"],
        {(a, b): c for a, b, c in d["add"]},
        [tuple(p) for p in d["leq"]],
        [tuple(p) for p in d["way_below"]],
    )


_BUILDERS: Dict[str, Callable[[Dict[str, Any]], CuSemigroup]] = {
    "extnat": lambda d: ExtNat(),
    "elementary": lambda d: Elementary(d["n"]),
    "simplicial": lambda d: Simplicial(d["rank"]),
    "softdim": lambda d: make_softdim(d["p"]),
    "truncated_ep": lambda d: make_truncated_ep(d["p"]),
    "cu_z": lambda d: make_cu_z(),
    "soft_ray": lambda d: make_soft_ray(),
    "steplsc": lambda d: IntervalLsc([Fraction(decode_number(t)) for t in d["grid"]]),
    "generator": lambda d: GeneratorG(),
    "reindexed": lambda d: Reindexed(semigroup_from_descriptor(d["base"]), d["stride"], d["offset"]),
    "table": _table,
}


def semigroup_from_descriptor(descriptor: Dict[str, Any]) -> CuSemigroup:
    kind = descriptor.get("kind")
    builder = _BUILDERS.get(kind)
    if builder is None:
        raise RepresentationError(f"Cannot rebuild a semigroup of kind {kind!r}")
    return builder(descriptor)
