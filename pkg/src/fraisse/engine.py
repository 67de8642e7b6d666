"""Joint embedding and amalgamation searches, return maps, and prefix construction.

Searches walk the category's object and hom streams in order and stop at
the first witness, so a bounded search is reproducible. A category's
closed forms are tried first and always verified.
"""

from dataclasses import dataclass
from itertools import islice
from typing import Any, Dict, Iterable, Optional

from ..core.comparison import compare_on, comparison_failure
from ..core.morphism import CuMorphism, IdentityMorphism, compose
from ..core.semigroup import CuSemigroup
from ..core.subset import FiniteSubset
from ..utils.codec import dumps
from ..utils.errors import DiagnosticError, StructuralError
from ..utils.logger import get_logger
from ..utils.parallel import first_success
from .category import FraisseCategory, Span
from .prefix import FraissePrefix, LedgerEntry, ObjectEntry, ReturnCertificate, ReturnFailure, basis_subset
from .schedule import Demand, DemandSchedule

logger = get_logger(__name__)

DEFAULT_BOUND = 64


# ===== Joint embedding =====

@dataclass
class JEPResult:
    """B with Hom(A1, B) and Hom(A2, B) nonempty, or exhaustion at `bound`."""
    A1: CuSemigroup
    A2: CuSemigroup
    bound: int
    found: Optional[Span]
    via: str

    @property
    def passed(self) -> bool:
        return self.found is not None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "A1": self.A1.describe(),
            "A2": self.A2.describe(),
            "bound": self.bound,
            "passed": self.passed,
            "via": self.via,
        }
        if self.found is not None:
            B, alpha1, alpha2 = self.found
            data.update({"B": B.describe(), "alpha1": alpha1.describe(), "alpha2": alpha2.describe()})
        return data


def _check_span(found: Span, first: CuSemigroup, second: CuSemigroup, what: str) -> None:
    C, left, right = found
    if left.domain != first or right.domain != second or left.codomain != C or right.codomain != C:
        raise StructuralError(f"Closed-form {what} has the wrong shape: {left!r}, {right!r}")


def check_jep(cat: FraisseCategory, A1: CuSemigroup, A2: CuSemigroup, bound: int = DEFAULT_BOUND, threads: int = 1) -> JEPResult:
    closed = cat.jep_closed_form(A1, A2)
    if closed is not None:
        _check_span(closed, A1, A2, "joint embedding")
        return JEPResult(A1, A2, bound, closed, "closed_form")

    def attempt(B: CuSemigroup) -> Optional[Span]:
        alpha1 = next(iter(cat.homs(A1, B)), None)
        if alpha1 is None:
            return None
        alpha2 = next(iter(cat.homs(A2, B)), None)
        if alpha2 is None:
            return None
        return (B, alpha1, alpha2)

    found = first_success(attempt, islice(cat.objects(), bound), threads)
    if found is None:
        logger.info(f"No joint embedding of {A1.key} and {A2.key} within {bound} objects")
        return JEPResult(A1, A2, bound, None, "exhausted")
    return JEPResult(A1, A2, bound, found, "search")


# ===== Amalgamation =====

@dataclass
class Amalgam:
    """(C, β1, β2) with β1∘α1 ≃_F β2∘α2, or exhaustion at `bound`.

    `exact` records whether the two composites agree on F outright.
    """
    alpha1: CuMorphism
    alpha2: CuMorphism
    F: FiniteSubset
    bound: int
    found: Optional[Span]
    via: str
    exact: bool = False

    @property
    def passed(self) -> bool:
        return self.found is not None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "alpha1": self.alpha1.describe(),
            "alpha2": self.alpha2.describe(),
            "F": self.F.encoded(),
            "bound": self.bound,
            "passed": self.passed,
            "via": self.via,
            "exact": self.exact,
        }
        if self.found is not None:
            C, beta1, beta2 = self.found
            data.update({"C": C.describe(), "beta1": beta1.describe(), "beta2": beta2.describe()})
        return data


def _agrees_on(left: CuMorphism, right: CuMorphism, F: FiniteSubset) -> bool:
    return all(left.apply(x) == right.apply(x) for x in F)


def amalgamate(
    cat: FraisseCategory,
    alpha1: CuMorphism,
    alpha2: CuMorphism,
    F: FiniteSubset,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
) -> Amalgam:
    if alpha1.domain != alpha2.domain:
        raise StructuralError(f"{alpha1.label} and {alpha2.label} do not share a domain")
    if F.host != alpha1.domain:
        raise StructuralError(f"F lives in {F.host.key}, not in {alpha1.domain.key}")
    B1, B2 = alpha1.codomain, alpha2.codomain

    closed = cat.amalgam_closed_form(alpha1, alpha2, F)
    if closed is not None:
        _check_span(closed, B1, B2, "amalgam")
        C, beta1, beta2 = closed
        left, right = compose(beta1, alpha1), compose(beta2, alpha2)
        failure = comparison_failure(left, right, F)
        if failure is not None:
            A = alpha1.domain
            raise DiagnosticError(
                f"Closed-form amalgam of {alpha1.label} and {alpha2.label} in {cat.name} does not commute on F",
                {"low": A.encode(failure[0]), "high": A.encode(failure[1])},
            )
        return Amalgam(alpha1, alpha2, F, bound, closed, "closed_form", _agrees_on(left, right, F))

    def attempt(C: CuSemigroup) -> Optional[Span]:
        seconds = list(islice(cat.homs(B2, C), bound))
        if not seconds:
            return None
        for beta1 in islice(cat.homs(B1, C), bound):
            left = compose(beta1, alpha1)
            for beta2 in seconds:
                if compare_on(left, compose(beta2, alpha2), F):
                    return (C, beta1, beta2)
        return None

    found = first_success(attempt, islice(cat.objects(), bound), threads)
    if found is None:
        logger.info(
            f"No amalgam of {alpha1.label} and {alpha2.label} within {bound} objects",
            extra={"extra_fields": {"category": cat.name, "F": len(F)}},
        )
        return Amalgam(alpha1, alpha2, F, bound, None, "exhausted")
    C, beta1, beta2 = found
    return Amalgam(alpha1, alpha2, F, bound, found, "search", _agrees_on(compose(beta1, alpha1), compose(beta2, alpha2), F))


# ===== Return maps =====

def find_return(
    prefix: FraissePrefix,
    i: int,
    alpha: CuMorphism,
    F: FiniteSubset,
    targets: Iterable[int],
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
) -> Optional[ReturnCertificate]:
    """First (j, β) with β∘α ≃_F σ_{i,j}: closed forms over every j, then enumeration."""
    cat = prefix.category
    T = alpha.codomain
    candidates = list(targets)
    for j in candidates:
        sigma = prefix.connecting(i, j)
        beta = cat.return_closed_form(alpha, sigma, F)
        if beta is None:
            continue
        if beta.domain != T or beta.codomain != prefix.stages[j]:
            raise StructuralError(f"Closed-form return map {beta!r} does not go {T.key} -> stage {j}")
        if not compare_on(compose(beta, alpha), sigma, F):
            raise DiagnosticError(
                f"Closed-form return map {beta.label} for {alpha.label} fails at stage {j}",
                {"stage": i, "target": j},
            )
        return ReturnCertificate(i, j, alpha, beta, F, "closed_form")
    if not cat.return_search:
        return None
    for j in candidates:
        sigma = prefix.connecting(i, j)

        def attempt(beta: CuMorphism) -> Optional[CuMorphism]:
            return beta if compare_on(compose(beta, alpha), sigma, F) else None

        beta = first_success(attempt, islice(cat.homs(T, prefix.stages[j]), bound), threads)
        if beta is not None:
            return ReturnCertificate(i, j, alpha, beta, F, "search")
    return None


def hom_index(cat: FraisseCategory, S: CuSemigroup, alpha: CuMorphism, bound: int = DEFAULT_BOUND) -> Optional[int]:
    """Position of α in the dovetailed stream out of S, matched by description."""
    wanted = dumps(alpha.describe())
    for n, candidate in enumerate(islice(cat.outgoing(S), bound * bound)):
        if dumps(candidate.describe()) == wanted:
            return n
    return None


def basis_level_of(F: FiniteSubset, cap: int = 16) -> Optional[int]:
    """Least k with F ⊆ B_k."""
    levels = [F.host.level_of(x, cap) for x in F]
    if any(level is None for level in levels):
        return None
    return max(levels, default=0)


def verify_fraisse_property(
    prefix: FraissePrefix,
    i: int,
    alpha: CuMorphism,
    F: FiniteSubset,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
) -> Any:
    """A ReturnCertificate (j, β) for α: S_i -> T, or a ReturnFailure naming the missing demand."""
    S = prefix.stage(i)
    if alpha.domain != S:
        raise StructuralError(f"{alpha!r} does not start at stage {i} ({S.key})")
    if F.host != S:
        raise StructuralError(f"F lives in {F.host.key}, not in stage {i}")
    if alpha.codomain == S:
        identity = IdentityMorphism(S)
        if compare_on(alpha, identity, F):
            return ReturnCertificate(i, i, alpha, identity, F, "identity")

    found = find_return(prefix, i, alpha, F, range(i + 1, prefix.length), bound, threads)
    if found is not None:
        return found

    a = hom_index(prefix.category, S, alpha, bound)
    k = basis_level_of(F)
    missing = None
    if a is not None and k is not None:
        missing = DemandSchedule(prefix.seed).index_of(i, a, k)
        reason = f"prefix too short: demand {missing.index} ({i}, {a}, {k}) needs at least {missing.index + 1} steps"
    else:
        reason = f"prefix too short: {alpha.label} is not reached by the schedule within bound {bound}"
    logger.info(f"No return map for {alpha.label} from stage {i}: {reason}")
    return ReturnFailure(i, alpha, F, missing, reason)


# ===== Prefix construction =====

def _skip(prefix: FraissePrefix, demand: Demand, reason: str) -> None:
    prefix.skipped.append({**demand.to_dict(), "reason": reason})


def _satisfy_morphism(prefix: FraissePrefix, demand: Demand, bound: int, threads: int) -> None:
    cat = prefix.category
    n = demand.stage
    if n > prefix.last:
        _skip(prefix, demand, "stage not built")
        return
    S = prefix.stages[n]
    alpha = next(islice(cat.outgoing(S), demand.morphism, None), None)
    if alpha is None:
        _skip(prefix, demand, "no such morphism")
        return
    F = basis_subset(S, demand.level)

    found = find_return(prefix, n, alpha, F, range(n + 1, prefix.length), bound, threads)
    pads = 0
    while found is None and pads < cat.pad_limit:
        step = cat.canonical_step(prefix.stages[-1])
        if step is None:
            break
        prefix.append(step.codomain, step)
        pads += 1
        found = find_return(prefix, n, alpha, F, [prefix.last], bound, threads)

    if found is None:
        amalgam = amalgamate(cat, alpha, prefix.connecting(n, prefix.last), F, bound, threads)
        if amalgam.found is None:
            raise DiagnosticError(
                f"Demand {demand.index} ({n}, {demand.morphism}, {demand.level}) is stuck: "
                f"no amalgam of {alpha.label} with stage {prefix.last} within bound {bound}",
                {"demand": demand.to_dict(), "alpha": alpha.describe(), "last": prefix.last},
            )
        C, beta1, beta2 = amalgam.found
        j = prefix.append(C, beta2)
        found = ReturnCertificate(n, j, alpha, beta1, F, "amalgam")

    prefix.ledger.append(LedgerEntry(demand, n, alpha, found.target, found.beta, found.via))
    logger.debug(f"Demand {demand.index} met at stage {found.target} via {found.via} after {pads} pads")


def _satisfy_object(prefix: FraissePrefix, demand: Demand, bound: int, threads: int) -> None:
    cat = prefix.category
    A = cat.object_at(demand.obj)
    if A is None:
        _skip(prefix, demand, "no such object")
        return
    for j, S in enumerate(prefix.stages):
        hom = next(iter(cat.homs(A, S)), None)
        if hom is not None:
            prefix.objects.append(ObjectEntry(demand, A, j, hom, "search"))
            return
    jep = check_jep(cat, A, prefix.stages[-1], bound, threads)
    if jep.found is None:
        raise DiagnosticError(
            f"Object demand {demand.index} is stuck: {A.key} has no joint embedding with stage {prefix.last} within bound {bound}",
            {"demand": demand.to_dict()},
        )
    B, alpha1, alpha2 = jep.found
    j = prefix.append(B, alpha2)
    prefix.objects.append(ObjectEntry(demand, A, j, alpha1, "jep"))


def build_fraisse_prefix(
    cat: FraisseCategory,
    schedule: DemandSchedule,
    steps: int,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
    start: Optional[CuSemigroup] = None,
) -> FraissePrefix:
    """Run the first `steps` demands of the schedule.

    A morphism demand (n, a, k) takes the a-th map α out of S_n and needs
    j > n and β with β∘α ≃_{B_k} σ_{n,j}. Existing stages are searched
    first, then the category's canonical step pads the sequence, and
    finally α is amalgamated with σ_{n,last} and the amalgam appended. An
    object demand needs a map from the object into some stage, appending
    a joint embedding when none exists.
    """
    prefix = FraissePrefix(cat, start if start is not None else cat.first_object(), schedule.seed)
    for demand in schedule.take(steps):
        if demand.is_object:
            _satisfy_object(prefix, demand, bound, threads)
        else:
            _satisfy_morphism(prefix, demand, bound, threads)
        prefix.steps += 1
    logger.info(
        f"Built {cat.name} prefix with {prefix.length} stages",
        extra={"extra_fields": prefix.summary()},
    )
    return prefix
