"""Rebuild morphisms from their archive descriptors."""

from typing import Any, Callable, Dict

from ..core.morphism import CuMorphism, IdentityMorphism, TableMorphism, compose
from ..instances.extnat import decode_ext
from ..instances.generator import GeneratorG
from ..instances.registry import semigroup_from_descriptor
from ..pl.plmap import PLMap
from ..utils.codec import decode_number
from ..utils.errors import RepresentationError
from .elementary import ElementaryMorphism
from .pl_induced import PLInducedMorphism
from .scaling import FromExtNat, ScalingMorphism
from .shift import ShiftMorphism
from .simplicial import MatrixMorphism


def _scaling(d: Dict[str, Any]) -> CuMorphism:
    S = semigroup_from_descriptor(d["object"])
    return ScalingMorphism(S, decode_number(d["factor"]))


def _from_extnat(d: Dict[str, Any]) -> CuMorphism:
    T = semigroup_from_descriptor(d["codomain"])
    return FromExtNat(T, T.decode(d["unit_image"]))


def _table(d: Dict[str, Any]) -> CuMorphism:
    S = semigroup_from_descriptor(d["domain"])
    T = semigroup_from_descriptor(d["codomain"])
    return TableMorphism(S, T, {S.decode(x): T.decode(y) for x, y in d["rows"]})


_BUILDERS: Dict[str, Callable[[Dict[str, Any]], CuMorphism]] = {
    "identity": lambda d: IdentityMorphism(semigroup_from_descriptor(d["object"])),
    "compose": lambda d: compose(morphism_from_descriptor(d["outer"]), morphism_from_descriptor(d["inner"])),
    "elementary": lambda d: ElementaryMorphism(d["n"], d["m"], decode_ext(d["k"])),
    "scaling": _scaling,
    "from_extnat": _from_extnat,
    "shift": lambda d: ShiftMorphism(GeneratorG(), decode_number(d["amount"])),
    "matrix": MatrixMorphism.decode,
    "pl_induced": lambda d: PLInducedMorphism(PLMap.decode(d["h"])),
    "table": _table,
}


def morphism_from_descriptor(descriptor: Dict[str, Any]) -> CuMorphism:
    kind = descriptor.get("kind")
    builder = _BUILDERS.get(kind)
    if builder is None:
        raise RepresentationError(f"Cannot rebuild a morphism of kind {kind!r}")
    return builder(descriptor)
