"""Sequences of morphisms with a shared domain and codomain."""

from typing import Callable, Dict, List, Optional, Sequence

from ..core.comparison import compare_on
from ..core.morphism import CuMorphism
from ..core.semigroup import CuSemigroup
from ..core.subset import FiniteSubset
from ..utils.errors import DiagnosticError, PreconditionError, StructuralError
from ..utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_HORIZON = 48


class MorphismSequence:
    """α_0, α_1, ... given by a term rule, with an optional modulus F ↦ i_F.

    Only the terms up to `horizon` are ever inspected; a modulus is trusted
    after a spot check on that window.
    """

    def __init__(
        self,
        domain: CuSemigroup,
        codomain: CuSemigroup,
        term: Callable[[int], CuMorphism],
        modulus: Optional[Callable[[FiniteSubset], int]] = None,
        horizon: int = DEFAULT_HORIZON,
        label: str = "seq",
    ) -> None:
        if horizon < 1:
            raise PreconditionError(f"Horizon must be >= 1, got {horizon}")
        self.domain: CuSemigroup = domain
        self.codomain: CuSemigroup = codomain
        self._term = term
        self.modulus = modulus
        self.horizon: int = horizon
        self.label: str = label
        self._cache: Dict[int, CuMorphism] = {}

    @staticmethod
    def from_terms(terms: Sequence[CuMorphism], label: str = "seq") -> 'MorphismSequence':
        """A finite prefix; the horizon is its last index."""
        if not terms:
            raise PreconditionError("Empty sequence")
        items = list(terms)
        return MorphismSequence(
            items[0].domain,
            items[0].codomain,
            lambda i: items[min(i, len(items) - 1)],
            horizon=len(items) - 1 if len(items) > 1 else 1,
            label=label,
        )

    def term(self, i: int) -> CuMorphism:
        if i not in self._cache:
            alpha = self._term(i)
            if alpha.domain != self.domain or alpha.codomain != self.codomain:
                raise StructuralError(f"Term {i} of {self.label} is {alpha!r}")
            self._cache[i] = alpha
        return self._cache[i]

    def terms(self, start: int, stop: int) -> List[CuMorphism]:
        return [self.term(i) for i in range(start, stop + 1)]

    def _first_failure_from_top(self, F: FiniteSubset) -> int:
        """Least i with α_j ≃_F α_k for all i <= j <= k <= horizon."""
        for j in range(self.horizon - 1, -1, -1):
            for k in range(j + 1, self.horizon + 1):
                if not compare_on(self.term(j), self.term(k), F):
                    return j + 1
        return 0

    def modulus_for(self, F: FiniteSubset) -> int:
        """i_F, from the modulus when given (spot-checked) or by search on the window."""
        if self.modulus is not None:
            index = self.modulus(F)
            stop = min(self.horizon, index + 4)
            for j in range(index, stop + 1):
                for k in range(j, stop + 1):
                    if not compare_on(self.term(j), self.term(k), F):
                        raise DiagnosticError(
                            f"Modulus of {self.label} fails at ({j}, {k})",
                            {"F": F.to_dict(), "index": index},
                        )
            return index
        index = self._first_failure_from_top(F)
        if index >= self.horizon:
            raise DiagnosticError(
                f"{self.label} is not Cauchy on F within {self.horizon} terms",
                {"F": F.to_dict(), "horizon": self.horizon},
            )
        logger.debug(
            f"Cauchy index {index} for {self.label}",
            extra={"extra_fields": {"size": len(F), "horizon": self.horizon}},
        )
        return index
