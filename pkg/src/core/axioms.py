"""Axiom checks on basis truncations, plus optional predicates.

Violations are returned as data. Every law quantifies over all of B_depth
unless the caller passes a `cap`; a capped run records where it stopped
and never counts as a pass.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ..utils.logger import get_logger
from .semigroup import CuSemigroup, Element

logger = get_logger(__name__)


@dataclass
class Violation:
    law: str
    witnesses: List[Any]

    def to_dict(self) -> Dict[str, Any]:
        return {"law": self.law, "witnesses": self.witnesses}


@dataclass
class AxiomReport:
    """Outcome of a check on B_depth; a pass needs no violations and no truncation."""
    subject: str
    depth: int
    checked: int
    violations: List[Violation] = field(default_factory=list)
    non_compact: List[Any] = field(default_factory=list)
    # basis prefix length the triple and quadruple laws stopped at
    truncated_at: Optional[int] = None

    @property
    def exhaustive(self) -> bool:
        return self.truncated_at is None

    @property
    def passed(self) -> bool:
        return self.exhaustive and not self.violations

    def add(self, law: str, *witnesses: Any) -> None:
        self.violations.append(Violation(law, list(witnesses)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "depth": self.depth,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "truncated_at": self.truncated_at,
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
            "non_compact": self.non_compact,
        }


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _good_row(S: CuSemigroup, row: List[Element], high: Element, below: Dict[Element, bool]) -> int:
    """Bit c set when row[c] ≪ high; `below` memoises ≪ against `high`."""
    mask = 0
    for c, low in enumerate(row):
        if low not in below:
            below[low] = S.way_below(low, high)
        if below[low]:
            mask |= 1 << c
    return mask


def check_axioms(S: CuSemigroup, depth: int, cap: Optional[int] = None) -> AxiomReport:
    """Monoid, order and way-below invariants on every element of B_depth.

    Sums, ≤ and ≪ are tabulated once over B. The quadruple law is checked
    per upper sum b + d, as bit masks: a row of c with a + c ≪ b + d for
    each a ≪ b, intersected with the c ≪ d.
    """
    B = list(S.basis(depth))
    n = len(B)
    enc = S.encode
    report = AxiomReport(subject=S.key, depth=depth, checked=n)
    if cap is not None and cap < n:
        report.truncated_at = cap
    m = n if report.truncated_at is None else cap
    zero = S.zero

    for x in B:
        if not S.leq(zero, x):
            report.add("zero_is_least", enc(x))
        if S.add(x, zero) != x:
            report.add("zero_is_unit", enc(x))
        if not S.leq(x, x):
            report.add("leq_reflexive", enc(x))
        if not S.way_below(x, x):
            report.non_compact.append(enc(x))

    sums = [[S.add(x, y) for y in B] for x in B]
    leq = [[S.leq(x, y) for y in B] for x in B]
    wb = [[S.way_below(x, y) for y in B] for x in B]

    for i, j in product(range(n), range(n)):
        x, y = B[i], B[j]
        if sums[i][j] != sums[j][i]:
            report.add("add_commutative", enc(x), enc(y))
        if leq[i][j] and leq[j][i] and i != j:
            report.add("leq_antisymmetric", enc(x), enc(y))
        if wb[i][j] and not leq[i][j]:
            report.add("way_below_implies_leq", enc(x), enc(y))
        if wb[i][j]:
            z = S.interpolate(x, y)
            if not (S.way_below(x, z) and S.way_below(z, y)):
                report.add("interpolation", enc(x), enc(y), enc(z))

    position = {x: i for i, x in enumerate(B)}

    def left(w: Element, k: int) -> Element:
        p = position.get(w)
        return S.add(w, B[k]) if p is None else sums[p][k]

    def right(i: int, w: Element) -> Element:
        q = position.get(w)
        return S.add(B[i], w) if q is None else sums[i][q]

    for i, j, k in product(range(m), range(m), range(m)):
        x, y, z = B[i], B[j], B[k]
        if left(sums[i][j], k) != right(i, sums[j][k]):
            report.add("add_associative", enc(x), enc(y), enc(z))
        if leq[i][j] and leq[j][k] and not leq[i][k]:
            report.add("leq_transitive", enc(x), enc(y), enc(z))
        if leq[i][j] and not S.leq(sums[i][k], sums[j][k]):
            report.add("add_monotone", enc(x), enc(y), enc(z))
        if wb[i][j] and wb[j][k] and not wb[i][k]:
            report.add("way_below_transitive", enc(x), enc(y), enc(z))
        if leq[i][j] and wb[j][k] and not wb[i][k]:
            report.add("way_below_lower_compatible", enc(x), enc(y), enc(z))
        if wb[i][j] and leq[j][k] and not wb[i][k]:
            report.add("way_below_upper_compatible", enc(x), enc(y), enc(z))

    # ≪-additivity, grouped by the upper sum b + d; bit a of lower[b] means a ≪ b
    lower = [0] * m
    for a, b in product(range(m), range(m)):
        if wb[a][b]:
            lower[b] |= 1 << a
    groups: Dict[Element, List[Tuple[int, int]]] = {}
    for b, d in product(range(m), range(m)):
        if lower[b] and lower[d]:
            groups.setdefault(sums[b][d], []).append((b, d))
    for high, members in groups.items():
        below: Dict[Element, bool] = {}
        good: Dict[int, int] = {}
        for b, d in members:
            for a in _bits(lower[b]):
                if a not in good:
                    good[a] = _good_row(S, sums[a][:m], high, below)
                for c in _bits(lower[d] & ~good[a]):
                    report.add("way_below_additive", enc(B[a]), enc(B[b]), enc(B[c]), enc(B[d]))

    logger.info(
        f"Axiom check of {S.key} at depth {depth}: {len(report.violations)} violations",
        extra={"extra_fields": {"subject": S.key, "basis_size": n, "truncated_at": report.truncated_at}},
    )
    return report


# ===== Optional structure predicates =====

def is_stably_finite(S: CuSemigroup, depth: int) -> Tuple[bool, Optional[List[Any]]]:
    """No x << z with x + y = x for y != 0, on B_depth; returns a witness if not."""
    B = S.basis(depth)
    for x in B:
        if not any(S.way_below(x, z) for z in B):
            continue
        for y in B:
            if y != S.zero and S.add(x, y) == x:
                return False, [S.encode(x), S.encode(y)]
    return True, None


def is_weakly_purely_infinite(S: CuSemigroup, n: int, depth: int) -> Tuple[bool, Optional[Any]]:
    """n·x = 2(n·x) for every x in B_depth."""
    for x in S.basis(depth):
        nx = S.multiple(n, x)
        if S.add(nx, nx) != nx:
            return False, S.encode(x)
    return True, None


def check_o5(S: CuSemigroup, depth: int) -> List[Any]:
    """x' << x <= y implies some c with x' + c <= y <= x + c (c searched in B_depth)."""
    B = S.basis(depth)
    failures: List[Any] = []
    for xp, x, y in product(B, B, B):
        if not (S.way_below(xp, x) and S.leq(x, y)):
            continue
        if not any(S.leq(S.add(xp, c), y) and S.leq(y, S.add(x, c)) for c in B):
            failures.append([S.encode(xp), S.encode(x), S.encode(y)])
    return failures


def check_o6(S: CuSemigroup, depth: int) -> List[Any]:
    """x' << x <= y + z implies e <= x, y and f <= x, z with x' <= e + f."""
    B = S.basis(depth)
    failures: List[Any] = []
    for xp, x, y, z in product(B, B, B, B):
        if not (S.way_below(xp, x) and S.leq(x, S.add(y, z))):
            continue
        below_xy = [e for e in B if S.leq(e, x) and S.leq(e, y)]
        below_xz = [f for f in B if S.leq(f, x) and S.leq(f, z)]
        if not any(S.leq(xp, S.add(e, f)) for e in below_xy for f in below_xz):
            failures.append([S.encode(xp), S.encode(x), S.encode(y), S.encode(z)])
    return failures
