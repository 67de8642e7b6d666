"""Back-and-forth constructions between Fraïssé prefixes.

The zig-zag alternates return maps: β_i: T_{b_i} -> S_{a_{i+1}} with
β_i∘α_i ≃_F σ_{a_i,a_{i+1}}, then α_{i+1}: S_{a_{i+1}} -> T_{b_{i+1}} with
α_{i+1}∘β_i ≃_G τ_{b_i,b_{i+1}}. Each finite set is the 2-refinement of
the depth basis together with the image of the previous set, so the
composed approximations stay inside the refined pairs.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..core.comparison import comparison_failure, n_refinement
from ..core.morphism import CuMorphism, IdentityMorphism, compose
from ..core.semigroup import CuSemigroup, Element
from ..core.subset import FiniteSubset
from ..limit.colimit import FormalColimit, Verdict, colimit_leq
from ..limit.intertwining import InducedPair, Intertwining, two_sided_induced
from ..utils.codec import dumps
from ..utils.errors import DiagnosticError, StructuralError
from ..utils.logger import get_logger
from .engine import DEFAULT_BOUND, amalgamate, find_return, verify_fraisse_property
from .prefix import FraissePrefix

logger = get_logger(__name__)


def _refined(S: CuSemigroup, depth: int, extra: Iterable[Element] = (), n: int = 2) -> FiniteSubset:
    return n_refinement(FiniteSubset.of(S, list(S.basis(depth)) + list(extra)), n)


def _too_short(prefix: FraissePrefix, stage: int, alpha: CuMorphism, F: FiniteSubset, bound: int, what: str) -> DiagnosticError:
    failure = verify_fraisse_property(prefix, stage, alpha, F, bound)
    detail: Dict[str, Any] = {"stage": stage, "stages": prefix.length, "steps": prefix.steps}
    missing = getattr(failure, "missing", None)
    if missing is not None:
        detail["missing"] = missing.to_dict()
        detail["required_steps"] = missing.index + 1
        detail["required_extension"] = max(missing.index + 1 - prefix.steps, 1)
    return DiagnosticError(f"{what}: prefix too short at stage {stage}", detail)


def _zigzag(
    left: FraissePrefix,
    right: FraissePrefix,
    a0: int,
    b0: int,
    first: CuMorphism,
    depth: int,
    bound: int,
    threads: int,
    rounds: Optional[int],
    label: str,
) -> Intertwining:
    a, b = [a0], [b0]
    alphas: List[CuMorphism] = [first]
    betas: List[CuMorphism] = []
    F = _refined(left.stages[a0], depth)
    G: Optional[FiniteSubset] = None
    stuck: Optional[Tuple[FraissePrefix, int, CuMorphism, FiniteSubset]] = None

    while rounds is None or len(betas) < rounds:
        i = len(alphas) - 1
        back = find_return(left, a[i], alphas[i], F, range(a[i] + 1, left.length), bound, threads)
        if back is None:
            stuck = (left, a[i], alphas[i], F)
            break
        betas.append(back.beta)
        a.append(back.target)

        T = right.stages[b[i]]
        carried = [alphas[i].apply(x) for x in F]
        if G is not None:
            carried += [right.connecting(b[i - 1], b[i]).apply(y) for y in G]
        G = _refined(T, depth, carried)
        forth = find_return(right, b[i], betas[i], G, range(b[i] + 1, right.length), bound, threads)
        if forth is None:
            stuck = (right, b[i], betas[i], G)
            break
        alphas.append(forth.beta)
        b.append(forth.target)

        S = left.stages[a[i + 1]]
        carried = [betas[i].apply(y) for y in G] + [left.connecting(a[i], a[i + 1]).apply(x) for x in F]
        F = _refined(S, depth, carried)

    if not betas:
        if stuck is None:
            raise DiagnosticError(f"{label}: a zig-zag needs at least one round", {"rounds": rounds})
        prefix, stage, alpha, subset = stuck
        raise _too_short(prefix, stage, alpha, subset, bound, label)

    source = left.colimit().subsequence(a, f"{left.colimit().label}|{label}")
    target = right.colimit().subsequence(b, f"{right.colimit().label}|{label}")
    I = Intertwining(source, target, alphas, list(range(len(alphas))), betas, [k + 1 for k in range(len(betas))], label)
    logger.info(
        f"Zig-zag {label}: {len(alphas)} forward and {len(betas)} backward maps",
        extra={"extra_fields": {"source_stages": a, "target_stages": b}},
    )
    return I


def uniqueness_intertwine(
    prefix1: FraissePrefix,
    prefix2: FraissePrefix,
    depth: int,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
    rounds: Optional[int] = None,
) -> Intertwining:
    """Two-sided intertwining between two prefixes of the same category."""
    if prefix1.category.name != prefix2.category.name:
        raise StructuralError(f"Prefixes come from {prefix1.category.name} and {prefix2.category.name}")
    cat = prefix1.category
    S0 = prefix1.stages[0]
    for b0, T in enumerate(prefix2.stages):
        first = next(iter(cat.homs(S0, T)), None)
        if first is not None:
            return _zigzag(prefix1, prefix2, 0, b0, first, depth, bound, threads, rounds, "uniqueness")
    raise DiagnosticError(
        f"No {cat.name} morphism from {S0.key} into any stage of the second prefix",
        {"stages": prefix2.length},
    )


def universality_map(
    prefix: FraissePrefix,
    target: FormalColimit,
    depth: int,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
) -> Intertwining:
    """One-sided intertwining α_i: T_i -> S_{φ(i)} from any sequence in the category.

    Step i amalgamates τ_{i,i+1} with α_i into (θ, ξ↑), then returns ξ↑
    into a later stage with ξ↓, and sets α_{i+1} = ξ↓∘θ.
    """
    cat = prefix.category
    own = prefix.colimit()
    if target.length <= own.length and dumps(target.describe()["maps"]) == dumps(own.describe()["maps"][:target.last]) \
            and all(target.stages[i] == own.stages[i] for i in range(target.length)):
        identities = [IdentityMorphism(S) for S in target.stages]
        return Intertwining(target, own, identities, list(range(target.length)), label="universality")

    T0 = target.stages[0]
    alphas: List[CuMorphism] = []
    phi: List[int] = []
    for j, S in enumerate(prefix.stages):
        first = next(iter(cat.homs(T0, S)), None)
        if first is not None:
            alphas.append(first)
            phi.append(j)
            break
    if not alphas:
        raise DiagnosticError(f"No {cat.name} morphism from {T0.key} into the prefix", {"stages": prefix.length})

    F = _refined(T0, depth)
    stuck: Optional[Tuple[int, CuMorphism, FiniteSubset]] = None
    for i in range(target.last):
        tau = target.maps[i]
        amalgam = amalgamate(cat, tau, alphas[i], F, bound, threads)
        if amalgam.found is None:
            raise DiagnosticError(
                f"No amalgam of {tau.label} and {alphas[i].label} within bound {bound}",
                {"step": i},
            )
        _, theta, xi_up = amalgam.found
        E = _refined(prefix.stages[phi[i]], depth, [alphas[i].apply(x) for x in F])
        back = find_return(prefix, phi[i], xi_up, E, range(phi[i] + 1, prefix.length), bound, threads)
        if back is None:
            stuck = (phi[i], xi_up, E)
            break
        alphas.append(compose(back.beta, theta))
        phi.append(back.target)
        F = _refined(target.stages[i + 1], depth, [tau.apply(x) for x in F])

    if len(alphas) < 2 and stuck is not None:
        stage, xi_up, E = stuck
        raise _too_short(prefix, stage, xi_up, E, bound, "universality")
    I = Intertwining(target, own, alphas, phi, label="universality")
    logger.info(f"Universality map into {cat.name}: φ = {phi}")
    return I


# ===== Homogeneity =====

@dataclass
class EndpointCertificate:
    statement: str
    passed: bool
    checked: int
    failure: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"statement": self.statement, "passed": self.passed, "checked": self.checked, "failure": self.failure}


@dataclass
class HomogeneityResult:
    stage: int
    target: int
    nu: CuMorphism
    intertwining: Intertwining
    pair: Optional[InducedPair]
    certificates: List[EndpointCertificate] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stage": self.stage,
            "target": self.target,
            "nu": self.nu.describe(),
            "passed": self.passed,
            "certificates": [c.to_dict() for c in self.certificates],
            "ledger": self.intertwining.ledger_dicts(),
        }


def _endpoint(statement: str, pairs: List[Tuple[Any, Any]], C: FormalColimit, F: FiniteSubset) -> EndpointCertificate:
    checked = 0
    for n, (small, large) in enumerate(pairs):
        checked += 1
        if colimit_leq(C, small, large) != Verdict.YES:
            low, high = F.ll_pairs[n // 2]
            return EndpointCertificate(statement, False, checked, {"low": F.host.encode(low), "high": F.host.encode(high)})
    return EndpointCertificate(statement, True, checked)


def homogeneity_iso(
    prefix: FraissePrefix,
    stage: int,
    alpha: CuMorphism,
    beta: CuMorphism,
    F: FiniteSubset,
    depth: int,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
    rounds: Optional[int] = None,
) -> HomogeneityResult:
    """An automorphism η of the limit carrying α to β up to F.

    α, β: C -> S_l are amalgamated on the 4-refinement of F into
    γ1∘α ≃ γ2∘β, γ1 is returned into S_j by δ, and ν_0 = δ∘γ2 starts a
    zig-zag of the prefix with itself from (l, j). Both endpoint
    statements are certified: σ_{l,j}∘α ≃_F ν_0∘β, and the induced maps
    carry β to α and α to β on F inside the colimit.
    """
    cat = prefix.category
    S = prefix.stage(stage)
    if alpha.codomain != S or beta.codomain != S or alpha.domain != beta.domain:
        raise StructuralError(f"{alpha!r} and {beta!r} must both go {alpha.domain.key} -> stage {stage}")
    wide = n_refinement(F, 4)
    amalgam = amalgamate(cat, alpha, beta, wide, bound, threads)
    if amalgam.found is None:
        raise DiagnosticError(f"No amalgam of {alpha.label} and {beta.label} within bound {bound}", {"stage": stage})
    _, gamma1, gamma2 = amalgam.found
    E = _refined(S, depth, [alpha.apply(x) for x in wide] + [beta.apply(x) for x in wide])
    back = find_return(prefix, stage, gamma1, E, range(stage + 1, prefix.length), bound, threads)
    if back is None:
        raise _too_short(prefix, stage, gamma1, E, bound, "homogeneity")
    j = back.target
    nu = compose(back.beta, gamma2)

    certificates: List[EndpointCertificate] = []
    failure = comparison_failure(compose(prefix.connecting(stage, j), alpha), compose(nu, beta), F)
    certificates.append(EndpointCertificate(
        f"σ_{{{stage},{j}}} ∘ α ≃_F ν_0 ∘ β",
        failure is None,
        len(F.ll_pairs),
        None if failure is None else {"low": F.host.encode(failure[0]), "high": F.host.encode(failure[1])},
    ))

    I = _zigzag(prefix, prefix, stage, j, nu, depth, bound, threads, rounds, "homogeneity")
    pair = two_sided_induced(I, depth)
    eta, eta_inverse = pair.alpha, pair.beta
    push = prefix.connecting(stage, j)
    forward: List[Tuple[Any, Any]] = []
    backward: List[Tuple[Any, Any]] = []
    for low, high in F.ll_pairs:
        forward.append((eta.represent((0, beta.apply(low))), (0, push.apply(alpha.apply(high)))))
        forward.append(((0, push.apply(alpha.apply(low))), eta.represent((0, beta.apply(high)))))
        backward.append((eta_inverse.represent((0, push.apply(alpha.apply(low)))), (0, beta.apply(high))))
        backward.append(((0, beta.apply(low)), eta_inverse.represent((0, push.apply(alpha.apply(high))))))
    certificates.append(_endpoint("η_F ∘ β ≃_F α", forward, I.target, F))
    certificates.append(_endpoint("η_F⁻¹ ∘ α ≃_F β", backward, I.source, F))

    result = HomogeneityResult(stage, j, nu, I, pair, certificates)
    logger.info(
        f"Homogeneity at stage {stage} of {cat.name}: {'pass' if result.passed else 'fail'}",
        extra={"extra_fields": {"target": j, "certificates": [c.passed for c in certificates]}},
    )
    return result
