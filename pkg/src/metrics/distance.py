"""d_G on Cu-paths, d_Λ on Hom-sets and the Lsc neighbourhood metric.

Every value is an exact rational. The infimum over shifts r is attained:
for step paths at a difference of breakpoints, for chain paths at a
difference of level times, for ball paths at a kink of the two radii.
"""

from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from ..core.morphism import CuMorphism
from ..core.semigroup import Element
from ..instances.steplsc import IntervalLsc, ONE, ZERO, Step, interval_indicator
from ..pl.plmap import pl_sup_distance
from ..utils.errors import RepresentationError, StructuralError
from ..utils.logger import get_logger
from ..utils.parallel import parallel_map
from .family import GeneratingFamily
from .paths import AffinePath, BallPath, CuPath, StepPath, _inducing_map

logger = get_logger(__name__)


# ===== d_G =====

def _step_within(u: StepPath, w: StepPath, r: Fraction, breaks: Sequence[Fraction]) -> bool:
    S = u.target
    ts = {t for t in breaks if t < ONE} | {b - r for b in breaks if ZERO <= b - r < ONE}
    return all(
        S.leq(u.value(t + r), w.value(t)) and S.leq(w.value(t + r), u.value(t))
        for t in ts
    )


def _step_distance(u: StepPath, w: StepPath) -> Fraction:
    breaks = sorted(set(u.breaks) | set(w.breaks) | {ZERO, ONE})
    candidates = sorted({b - a for a in breaks for b in breaks if ZERO <= b - a <= ONE})
    for r in candidates:
        if _step_within(u, w, r, breaks):
            return r
    return ONE


def _affine_distance(u: AffinePath, w: AffinePath) -> Fraction:
    levels = set(u.g.ys) | set(w.g.ys)
    return max(abs(u.level_time(v) - w.level_time(v)) for v in levels)


def _ball_distance(u: BallPath, w: BallPath) -> Fraction:
    if u.centre != w.centre:
        raise RepresentationError(f"Ball paths centred at {u.centre} and {w.centre}")
    c = u.centre
    points = set(u.h.xs) | set(w.h.xs) | u.h.preimage_points(c) | w.h.preimage_points(c)
    return min(ONE, max(abs(abs(u.h(s) - c) - abs(w.h(s) - c)) for s in points))


def d_G(u: CuPath, w: CuPath) -> Fraction:
    """inf { r : u_{t+r} <= w_t and w_{t+r} <= u_t for all t }."""
    if u.target != w.target:
        raise StructuralError(f"Paths end in {u.target.key} and {w.target.key}")
    if isinstance(u, StepPath) and isinstance(w, StepPath):
        return _step_distance(u, w)
    if isinstance(u, AffinePath) and isinstance(w, AffinePath):
        return _affine_distance(u, w)
    if isinstance(u, BallPath) and isinstance(w, BallPath):
        return _ball_distance(u, w)
    raise RepresentationError(f"No exact distance between a {type(u).__name__} and a {type(w).__name__}")


# ===== d_Λ =====

def _check_pair(alpha: CuMorphism, beta: CuMorphism, family: GeneratingFamily) -> None:
    if alpha.domain != beta.domain or alpha.codomain != beta.codomain:
        raise StructuralError(f"{alpha.label} and {beta.label} do not share domain and codomain")
    if family.target != alpha.domain:
        raise StructuralError(f"{family.name} targets {family.target.key}, not {alpha.domain.key}")


def distance_profile(alpha: CuMorphism, beta: CuMorphism, family: GeneratingFamily, threads: int = 1) -> List[Fraction]:
    """d_G(α∘τ, β∘τ) for each τ of the family, in family order."""
    _check_pair(alpha, beta, family)
    return parallel_map(lambda tau: d_G(tau.push(alpha), tau.push(beta)), family.paths, threads)


def d_Lambda(alpha: CuMorphism, beta: CuMorphism, family: GeneratingFamily, threads: int = 1) -> Fraction:
    """sup over the family of d_G(α∘τ, β∘τ).

    For a truncated enumerable family this is the sup over the truncation,
    a lower bound for the full family.
    """
    value = max(distance_profile(alpha, beta, family, threads), default=ZERO)
    logger.debug(
        f"d_Lambda({alpha.label}, {beta.label}) over {family.name}",
        extra={"extra_fields": {"value": value, "paths": len(family.paths), "truncation": family.truncation}},
    )
    return value


# ===== Lsc([0,1]) neighbourhood metric =====

def _mesh_intervals(S: IntervalLsc, depth: int) -> List[Tuple[Fraction, Fraction, bool, bool]]:
    mesh = S.mesh(depth)
    result = []
    for i, a in enumerate(mesh):
        for b in mesh[i + 1:]:
            for lc in ((False, True) if a == ZERO else (False,)):
                for rc in ((False, True) if b == ONE else (False,)):
                    result.append((a, b, lc, rc))
    return result


def _neighbourhood(a: Fraction, b: Fraction, lc: bool, rc: bool, r: Fraction) -> Step:
    lo, hi = a - r, b + r
    return interval_indicator(max(lo, ZERO), min(hi, ONE), left_closed=lc or lo < 0, right_closed=rc or hi > 1)


def lsc_metric(alpha: CuMorphism, beta: CuMorphism, depth: Optional[int] = None) -> Fraction:
    """inf r with α(1_V) <= β(1_{V_r}) and β(1_V) <= α(1_{V_r}) for every open V.

    Without a depth V runs over all open sets; for morphisms induced by PL
    maps that is the sup distance of the maps. With a depth, V runs over
    the intervals of the dyadic mesh and r over its multiples.
    """
    if alpha.domain != beta.domain or not isinstance(alpha.domain, IntervalLsc):
        raise StructuralError("lsc_metric compares morphisms out of Lsc([0,1], N̄)")
    if depth is None:
        return pl_sup_distance(_inducing_map(alpha), _inducing_map(beta))
    T = alpha.codomain
    intervals = _mesh_intervals(alpha.domain, depth)
    scale = 2 ** depth
    for k in range(scale + 1):
        r = Fraction(k, scale)
        if all(_neighbourhood_holds(T, alpha, beta, V, r) for V in intervals):
            return r
    return ONE


def _neighbourhood_holds(T: Any, alpha: CuMorphism, beta: CuMorphism, V: Tuple[Fraction, Fraction, bool, bool], r: Fraction) -> bool:
    a, b, lc, rc = V
    inner: Element = interval_indicator(a, b, lc, rc)
    outer: Element = _neighbourhood(a, b, lc, rc, r)
    return T.leq(alpha.apply(inner), beta.apply(outer)) and T.leq(beta.apply(inner), alpha.apply(outer))
