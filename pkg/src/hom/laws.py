"""Law checks for morphisms on basis truncations."""

from itertools import product

from ..core.axioms import AxiomReport
from ..core.morphism import CuMorphism
from ..utils.logger import get_logger

logger = get_logger(__name__)


def morphism_laws_check(alpha: CuMorphism, depth: int) -> AxiomReport:
    """Preservation of 0, +, <= and << on all pairs of B_depth of the domain."""
    S, T = alpha.domain, alpha.codomain
    B = S.basis(depth)
    images = {x: alpha.apply(x) for x in B}
    report = AxiomReport(subject=alpha.label, depth=depth, checked=len(B))
    enc = S.encode

    if alpha.apply(S.zero) != T.zero:
        report.add("preserves_zero", T.encode(alpha.apply(S.zero)))
    for x, y in product(B, B):
        if alpha.apply(S.add(x, y)) != T.add(images[x], images[y]):
            report.add("preserves_add", enc(x), enc(y))
        if S.leq(x, y) and not T.leq(images[x], images[y]):
            report.add("preserves_leq", enc(x), enc(y))
        if S.way_below(x, y) and not T.way_below(images[x], images[y]):
            report.add("preserves_way_below", enc(x), enc(y))

    logger.info(
        f"Morphism laws for {alpha.label} at depth {depth}: {'pass' if report.passed else 'fail'}",
        extra={"extra_fields": {"checked": report.checked, "violations": len(report.violations)}},
    )
    return report


def is_order_embedding_on(alpha: CuMorphism, depth: int) -> bool:
    """α(x) <= α(y) implies x <= y on B_depth."""
    S, T = alpha.domain, alpha.codomain
    B = S.basis(depth)
    return all(
        S.leq(x, y) for x, y in product(B, B) if T.leq(alpha.apply(x), alpha.apply(y))
    )
