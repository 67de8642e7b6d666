"""Built-in categories and a name registry for the command line."""

from typing import Any, Callable, Dict

from ...utils.errors import ConfigurationError
from ..category import FraisseCategory
from .elementary import (
    EmbeddingElementaryCategory,
    ObstructionCertificate,
    PowerElementaryCategory,
    SaturatingElementaryCategory,
    obstruction_certificate,
)
from .pl import PseudoArcCategory
from .scaled import ScaledCategory
from .simplicial import CantorCategory, SimplicialDimCategory, function_of, standard_amalgam, surjections

_FACTORIES: Dict[str, Callable[..., FraisseCategory]] = {
    "s_p": lambda p=2: ScaledCategory(int(p)),
    "e_n": lambda n=2: PowerElementaryCategory(int(n)),
    "e_inf": lambda: SaturatingElementaryCategory(),
    "e_inf_embeddings": lambda: EmbeddingElementaryCategory(),
    "K_Cantor": lambda: CantorCategory(),
    "s_dim_bounded": lambda R=3: SimplicialDimCategory(int(R)),
    "K_P": lambda max_pieces=3, denominator=2: PseudoArcCategory(int(max_pieces), int(denominator)),
}

BUILTIN_CATEGORIES = tuple(sorted(_FACTORIES))


def builtin_category(name: str, **params: Any) -> FraisseCategory:
    factory = _FACTORIES.get(name)
    if factory is None:
        raise ConfigurationError(f"Unknown category {name!r}; choose one of {', '.join(BUILTIN_CATEGORIES)}")
    try:
        return factory(**params)
    except TypeError as e:
        raise ConfigurationError(f"Bad parameters for {name}: {e}")


__all__ = [
    "BUILTIN_CATEGORIES",
    "CantorCategory",
    "EmbeddingElementaryCategory",
    "ObstructionCertificate",
    "PowerElementaryCategory",
    "PseudoArcCategory",
    "SaturatingElementaryCategory",
    "ScaledCategory",
    "SimplicialDimCategory",
    "builtin_category",
    "function_of",
    "obstruction_certificate",
    "standard_amalgam",
    "surjections",
]
