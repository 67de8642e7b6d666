"""One function per subcommand: drive the engine, collect a Report."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from ..config import AppConfig
from ..core.axioms import check_axioms, is_stably_finite
from ..core.comparison import compare_on
from ..core.morphism import IdentityMorphism
from ..core.subset import FiniteSubset
from ..fraisse import (
    amalgamate,
    build_fraisse_prefix,
    builtin_category,
    completeness_gaps,
    obstruction_certificate,
    replay_prefix,
    saturation_ledger,
)
from ..fraisse.builtin import EmbeddingElementaryCategory
from ..fraisse.prefix import basis_subset
from ..fraisse.schedule import DemandSchedule
from ..hom.elementary import ElementaryMorphism, brute_force_classify, elementary_enumerate, elementary_hom_classify, generator_images
from ..hom.laws import morphism_laws_check
from ..hom.pl_induced import PLInducedMorphism, pl_identity
from ..hom.scaling import ScalingMorphism
from ..hom.shift import shift_sequence
from ..limit.cauchy import cauchy_limit
from ..limit.sequence import MorphismSequence
from ..metrics import (
    ball_family,
    counterexample_family,
    cu_z_family,
    d_Lambda,
    d_lambda_cauchy_limit,
    distance_profile,
    lambda_fin_equivalence,
    lsc_metric,
    soft_ray_family,
)
from ..pl.plmap import PLMap
from ..utils.codec import encode_number, fraction_text
from ..utils.errors import BudgetExhausted, DiagnosticError, ManifestError
from ..utils.logger import get_logger
from .manifest import RunManifest
from .report import ExitCode, Report

logger = get_logger(__name__)

HALF = Fraction(1, 2)


def _texts(values: List[Any]) -> str:
    return ", ".join(fraction_text(v) for v in values)


# ===== check =====

def cmd_check(manifest: RunManifest, config: AppConfig) -> Report:
    """Cu axioms of every declared object and morphism laws of every declared map, on B_depth."""
    depth = config.engine.depth
    if not manifest.objects and not manifest.morphisms:
        raise ManifestError(f"{manifest.source}: check needs at least one object or morphism")
    report = Report("check", ExitCode.PASS)
    results: List[Dict[str, Any]] = []
    for name, S in manifest.objects.items():
        axioms = check_axioms(S, depth)
        finite, witness = is_stably_finite(S, depth)
        results.append({"name": name, **axioms.to_dict(), "stably_finite": finite, "stably_finite_witness": witness})
        report.add(f"object {name} = {S.key}: {len(axioms.violations)} violations on {axioms.checked} basis elements; stably finite: {finite}")
    for name, alpha in manifest.morphisms.items():
        laws = morphism_laws_check(alpha, depth)
        results.append({"name": name, **laws.to_dict()})
        report.add(f"morphism {name} = {alpha.label}: {len(laws.violations)} violations on {laws.checked} basis elements")
    if not all(row["passed"] for row in results):
        report.status = ExitCode.FAILED
    report.data = {"depth": depth, "results": results}
    return report


# ===== enumerate =====

def _discrepancies(up_to: int) -> List[Dict[str, Any]]:
    found = []
    for n in range(1, up_to + 1):
        for m in range(1, up_to + 1):
            for k in generator_images(m):
                rule, brute = elementary_hom_classify(n, m, k), brute_force_classify(n, m, k)
                if rule != brute:
                    found.append({"n": n, "m": m, "k": encode_number(k), "rule": rule.value, "brute_force": brute.value})
    return found


def cmd_enumerate(manifest: RunManifest, config: AppConfig) -> Report:
    """Hom(E_n, E_m) by the interval rule, optionally cross-checked against brute force up to `up_to`."""
    n = manifest.int_param("n", 1)
    m = manifest.int_param("m", 2)
    kind = manifest.param("kind", "morphisms")
    maps = elementary_enumerate(n, m, kind)
    images = [alpha.k for alpha in maps]
    report = Report("enumerate", ExitCode.PASS)
    report.add(f"Hom(E_{n}, E_{m}) {kind}: 1 ↦ {_texts(images)}")
    report.data = {
        "n": n,
        "m": m,
        "kind": kind,
        "images": images,
        "classes": [alpha.kind.value for alpha in maps],
    }
    up_to = manifest.param("up_to")
    if up_to is not None:
        up_to = manifest.int_param("up_to", 1)
        found = _discrepancies(up_to)
        report.data.update({"up_to": up_to, "discrepancies": found})
        report.add(f"rule against brute force for n, m <= {up_to}: {len(found)} discrepancies")
        if found:
            report.status = ExitCode.FAILED
    return report


# ===== amalgamate =====

def cmd_amalgamate(manifest: RunManifest, config: AppConfig) -> Report:
    """Amalgamate the declared alpha1, alpha2 over F; an exhausted search may carry an interval certificate."""
    engine = config.engine
    cat = manifest.build_category()
    alpha1 = manifest.morphism(manifest.param("alpha1", "alpha1"))
    alpha2 = manifest.morphism(manifest.param("alpha2", "alpha2"))
    F = manifest.sets.get(manifest.param("set", "F"))
    if F is None:
        F = basis_subset(alpha1.domain, engine.depth)
    result = amalgamate(cat, alpha1, alpha2, F, engine.bound, engine.threads)

    report = Report("amalgamate", ExitCode.PASS)
    report.data = {"category": cat.describe(), "amalgam": result.to_dict()}
    if result.found is not None:
        C = result.found[0]
        report.add(f"{cat.name}: amalgam of {alpha1.label} and {alpha2.label} in {C.key} via {result.via}; exact on F: {result.exact}")
        return report

    report.status = ExitCode.EXHAUSTED
    report.add(f"{cat.name}: exhausted {engine.bound} objects without an amalgam of {alpha1.label} and {alpha2.label}")
    if (
        isinstance(cat, EmbeddingElementaryCategory)
        and isinstance(alpha1, ElementaryMorphism)
        and isinstance(alpha2, ElementaryMorphism)
        and alpha1.n == alpha2.n == 1
        and alpha1.m == alpha2.m
        and alpha1.k != alpha2.k
    ):
        k1, k2 = sorted((alpha1.k, alpha2.k))
        cert = obstruction_certificate(alpha1.m, manifest.int_param("m_max", engine.bound), k1, k2)
        report.data["certificate"] = cert.to_dict()
        report.add(
            f"interval certificate: ({k1}m/{alpha1.m + 1}, {k1}m/{alpha1.m}] and ({k2}m/{alpha1.m + 1}, {k2}m/{alpha1.m}] "
            f"disjoint for m <= {cert.m_max}: {cert.passed}; for every m: {cert.holds_for_all}"
        )
    return report


# ===== fraisse =====

def cmd_fraisse(manifest: RunManifest, config: AppConfig) -> Report:
    """Build a prefix, re-check its ledger and archive it as prefix.json."""
    engine = config.engine
    cat = manifest.build_category()
    steps = manifest.int_param("steps", 10)
    try:
        prefix = build_fraisse_prefix(cat, DemandSchedule(engine.seed), steps, engine.bound, engine.threads)
    except DiagnosticError as e:
        raise BudgetExhausted(str(e), engine.bound, e.detail)
    stale = prefix.recheck()
    gaps = completeness_gaps(prefix)
    identification = prefix.identify(engine.depth)

    report = Report("fraisse", ExitCode.PASS)
    summary = prefix.summary()
    report.add(f"{cat.name}: {summary['stages']} stages after {steps} demands, seed {engine.seed}")
    report.add(f"ledger: {summary['satisfied']} morphism demands, {summary['objects']} object demands, {summary['skipped']} skipped")
    report.add(f"stale certificates: {len(stale)}; unaccounted demands: {len(gaps)}")
    report.data = {"summary": summary, "stale": stale, "gaps": gaps, "identification": None}
    if identification is not None:
        report.data["identification"] = identification.to_dict()
        report.add(f"identified with {identification.target} on B_{engine.depth}: {identification.passed}")
    rows = saturation_ledger(prefix)
    report.data["saturation"] = [row.to_dict() for row in rows]
    report.add(f"saturated stage generators: {sum(row.idempotent_at is not None for row in rows)} of {len(rows)}")
    if stale or gaps or (identification is not None and not identification.passed):
        report.status = ExitCode.FAILED
    report.archives["prefix"] = {**prefix.to_dict(), "bound": engine.bound}
    return report


# ===== limit =====

def _soft_geometric(manifest: RunManifest, config: AppConfig, report: Report) -> None:
    family = soft_ray_family()
    S = family.target
    horizon = manifest.int_param("horizon", 8)
    terms = [ScalingMorphism(S, 1 + Fraction(1, 2 ** i)) for i in range(horizon + 1)]
    seq = MorphismSequence.from_terms(terms, "soft_geometric")
    result = d_lambda_cauchy_limit(seq, family, config.engine.depth, IdentityMorphism(S), config.engine.threads)
    report.data.update({"phi": result.limit.phi, "metric": result.to_dict()})
    report.add(f"×(1 + 2^-i) on {S.key}: Cauchy indices {result.limit.phi}")
    report.add(f"d_Λ to the limit: {_texts(result.to_limit or [])}")
    if result.converges_in_metric is False:
        report.status = ExitCode.FAILED


def _shift(manifest: RunManifest, config: AppConfig, report: Report) -> None:
    family = counterexample_family(manifest.int_param("n_max", 8))
    G = family.target
    horizon = manifest.int_param("horizon", 16)
    seq = MorphismSequence(G, G, lambda i: shift_sequence(G, i + 1), horizon=horizon, label="shift")
    identity = IdentityMorphism(G)
    limit = cauchy_limit(seq, config.engine.depth, closed_form=identity)
    spread = lambda_fin_equivalence(seq.terms(0, horizon), identity, family)
    report.data.update({"phi": limit.phi, "family": spread.to_dict()})
    report.add(f"shifts by 1/n on G: Cauchy indices {limit.phi}, limit the identity")
    report.add(f"sup over {family.name} to the limit: {_texts(spread.sup)}")


_SEQUENCES = {"soft_geometric": _soft_geometric, "shift": _shift}


def cmd_limit(manifest: RunManifest, config: AppConfig) -> Report:
    name = manifest.param("sequence", "soft_geometric")
    if name not in _SEQUENCES:
        raise ManifestError(f"{manifest.source}: unknown sequence {name!r}; choose one of {', '.join(sorted(_SEQUENCES))}")
    report = Report("limit", ExitCode.PASS)
    report.data = {"sequence": name, "depth": config.engine.depth}
    _SEQUENCES[name](manifest, config, report)
    return report


# ===== metric =====

def _counterexample(manifest: RunManifest, config: AppConfig, report: Report) -> None:
    """d_Λ(τ_n, id) over {λ_1..λ_n} next to compare_on(τ_n, id, B_depth)."""
    n_max = manifest.int_param("n_max", 64)
    rows = []
    for n in range(2, n_max + 1):
        family = counterexample_family(n)
        G = family.target
        tau, identity = shift_sequence(G, n), IdentityMorphism(G)
        F = FiniteSubset.of(G, G.basis(config.engine.depth))
        rows.append({"n": n, "d": d_Lambda(tau, identity, family, config.engine.threads), "compares": compare_on(tau, identity, F)})
    constant = all(row["d"] == HALF for row in rows)
    from_index = next((row["n"] for i, row in enumerate(rows) if all(r["compares"] for r in rows[i:])), None)
    report.data.update({"table": rows, "constant_half": constant, "compares_from": from_index})
    report.add(f"d_Λ(τ_n, id) = 1/2 for n = 2..{n_max}: {constant}")
    report.add(f"τ_n ≃_F id on B_{config.engine.depth} from n = {from_index}")
    if not constant or from_index is None:
        report.status = ExitCode.FAILED


def _cu_z(manifest: RunManifest, config: AppConfig, report: Report) -> None:
    family = cu_z_family()
    S = family.target
    factor = manifest.param("factor", 2)
    profile = distance_profile(IdentityMorphism(S), ScalingMorphism(S, factor), family, config.engine.threads)
    report.data.update({"factor": factor, "profile": dict(zip((tau.label for tau in family.paths), profile)), "d": max(profile)})
    report.add(f"d_Λ(id, ×{fraction_text(Fraction(factor))}) on {S.key} = {fraction_text(max(profile))} ({_texts(profile)} per path)")


def _lsc(manifest: RunManifest, config: AppConfig, report: Report) -> None:
    alpha = manifest.morphisms.get("alpha") or PLInducedMorphism(PLMap.from_points([(0, 0), (Fraction(1, 4), 0), (1, 1)]))
    beta = manifest.morphisms.get("beta") or pl_identity()
    depth = min(config.engine.depth, manifest.int_param("mesh", 3))
    balls = d_Lambda(alpha, beta, ball_family(depth=2), config.engine.threads)
    values = {"sup": lsc_metric(alpha, beta), "mesh": lsc_metric(alpha, beta, depth), "balls": balls}
    report.data.update({"alpha": alpha.describe(), "beta": beta.describe(), "mesh_depth": depth, **values})
    report.add(f"{alpha.label} against {beta.label}: sup {fraction_text(values['sup'])}, mesh {fraction_text(values['mesh'])}, balls {fraction_text(balls)}")


_EXAMPLES = {"counterexample": _counterexample, "cu_z": _cu_z, "lsc": _lsc}


def cmd_metric(manifest: RunManifest, config: AppConfig) -> Report:
    name = manifest.param("example", "counterexample")
    if name not in _EXAMPLES:
        raise ManifestError(f"{manifest.source}: unknown example {name!r}; choose one of {', '.join(sorted(_EXAMPLES))}")
    report = Report("metric", ExitCode.PASS)
    report.data = {"example": name}
    _EXAMPLES[name](manifest, config, report)
    return report


# ===== replay =====

def cmd_replay(archive: str, config: AppConfig, rebuild: bool = False) -> Report:
    """Re-verify an archived prefix certificate by certificate; optionally rebuild it from its seed."""
    try:
        data = json.loads(Path(archive).read_text(encoding="utf-8"))
        params = dict(data["category_params"])
        name = params.pop("category")
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ManifestError(f"Cannot read archive {archive}: {e}")
    cat = builtin_category(name, **params)
    result = replay_prefix(cat, data, data.get("bound", config.engine.bound), config.engine.threads, rebuild=rebuild)
    report = Report("replay", ExitCode.PASS if result.passed else ExitCode.FAILED)
    report.data = {"archive": Path(archive).name, "category": cat.describe(), "replay": result.to_dict()}
    report.add(f"{cat.name}: {len(data.get('ledger', []))} certificates, {len(result.stale_entries)} stale, {len(result.gaps)} gaps")
    if result.matches_rebuild is not None:
        report.add(f"rebuild from seed {data.get('seed', 0)} matches the archive: {result.matches_rebuild}")
    return report


COMMANDS = {
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "amalgamate": cmd_amalgamate,
    "fraisse": cmd_fraisse,
    "limit": cmd_limit,
    "metric": cmd_metric,
}
