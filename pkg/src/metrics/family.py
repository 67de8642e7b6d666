"""Families of Cu-paths with a generating image, and the standard families."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.semigroup import CuSemigroup, Element
from ..instances.generator import GeneratorG, make_generator
from ..instances.softdim import compact, make_cu_z, make_soft_ray
from ..pl.plmap import PLMap
from ..utils.errors import PreconditionError, RepresentationError, StructuralError
from .paths import ONE, ZERO, AffinePath, BallPath, CuPath, StepPath, constant_path


@dataclass(frozen=True)
class GeneratingFamily:
    """A finite Λ ⊆ Th(S); `truncation` is set when Λ cuts an enumerable family."""
    target: CuSemigroup
    paths: Tuple[CuPath, ...]
    name: str = "family"
    truncation: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.paths:
            raise PreconditionError(f"Family {self.name} is empty")
        for tau in self.paths:
            if tau.target != self.target:
                raise StructuralError(f"{tau.label} ends in {tau.target.key}, not {self.target.key}")

    def __len__(self) -> int:
        return len(self.paths)

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "target": self.target.describe(),
            "truncation": self.truncation,
            "paths": [tau.describe() for tau in self.paths],
        }


def ray_path(S: CuSemigroup, label: str = "τ") -> AffinePath:
    """1_{(t,1]} ↦ the chain element of size 1 - t."""
    return AffinePath(S, PLMap((ZERO, ONE), (ONE, ZERO)), label)


def soft_ray_family() -> GeneratingFamily:
    """{τ} on [0, ∞]."""
    S = make_soft_ray()
    return GeneratingFamily(S, (ray_path(S),), "soft_ray")


def cu_z_family() -> GeneratingFamily:
    """{τ, c} on N ⊔ (0, ∞]: the soft ray and the constant path at 1_c."""
    S = make_cu_z()
    return GeneratingFamily(S, (ray_path(S), constant_path(S, compact(1), "c")), "cu_z")


def ball_family(centres: Optional[Iterable[Any]] = None, depth: int = 2) -> GeneratingFamily:
    """Ball paths of Lsc([0,1], N̄); centres default to the dyadic mesh of `depth`."""
    if centres is None:
        scale = 2 ** depth
        centres = [Fraction(k, scale) for k in range(scale + 1)]
    paths = tuple(BallPath(c) for c in sorted({Fraction(c) for c in centres}))
    return GeneratingFamily(paths[0].target, paths, "balls")


def _chains(elements: Sequence[Element], S: CuSemigroup, max_length: int) -> List[Tuple[Element, ...]]:
    found: List[Tuple[Element, ...]] = []

    def extend(chain: Tuple[Element, ...]) -> None:
        if chain:
            found.append(chain)
        if len(chain) == max_length:
            return
        for x in elements:
            if not chain or (x != chain[-1] and S.way_below(chain[-1], x)):
                extend(chain + (x,))

    extend(())
    return found


def chain_path(S: CuSemigroup, chain: Sequence[Element], label: str = "chain") -> StepPath:
    """τ_c with τ_c(1_{((l-k)/l,1]}) = c(k) for the chain 0 = c(0) << c(1) << ... << c(l)."""
    l = len(chain)
    breaks = [Fraction(j, l) for j in range(l + 1)]
    return StepPath(S, breaks, list(reversed(chain)), label)


def uniform_basis_family(S: CuSemigroup, depth: int, max_length: int = 3) -> GeneratingFamily:
    """Chain paths over the compact nonzero elements of B_depth."""
    elements = [x for x in S.basis(depth) if x != S.zero and S.is_compact(x)]
    if not elements:
        raise RepresentationError(f"B_{depth} of {S.key} has no compact nonzero element")
    paths = tuple(
        chain_path(S, c, "chain:" + ",".join(str(S.encode(x)) for x in c))
        for c in _chains(elements, S, max_length)
    )
    return GeneratingFamily(S, paths, f"uniform_basis_{depth}")


def lambda_path(G: GeneratorG, n: int) -> AffinePath:
    """λ_n: 1_{(t,1]} ↦ 1_{(f_n(t),1]}, f_n through 0 ↦ 0, 1/2 ↦ 1/n, 1 ↦ 1."""
    if n < 1:
        raise PreconditionError(f"λ index must be >= 1, got {n}")
    size = PLMap((ZERO, Fraction(1, 2), ONE), (ONE, ONE - Fraction(1, n), ZERO))
    return AffinePath(G, size, f"λ_{n}")


def counterexample_family(n_max: int) -> GeneratingFamily:
    """{λ_1, ..., λ_{n_max}}, a truncation of an infinite family in Th(G)."""
    G = make_generator()
    paths = tuple(lambda_path(G, n) for n in range(1, n_max + 1))
    return GeneratingFamily(G, paths, "lambda", truncation=n_max)
