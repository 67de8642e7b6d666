"""Endpoint normalisation and rational peak-and-valley approximation."""

from fractions import Fraction
from math import floor
from typing import List, Sequence

from ..utils.errors import PreconditionError
from .plmap import ONE, ZERO, PLMap, identity_map, require_surjection


def _dedupe(values: Sequence[Fraction]) -> List[Fraction]:
    out: List[Fraction] = []
    for v in values:
        if not out or out[-1] != v:
            out.append(v)
    return out


def _variation(values: Sequence[Fraction]) -> Fraction:
    return sum((abs(b - a) for a, b in zip(values, values[1:])), ZERO)


def first_preimage(f: PLMap, value: Fraction) -> Fraction:
    return min(f.preimage_points(value))


def normalizing_map(f: PLMap) -> PLMap:
    """A PL surjection u with f ∘ u fixing 0 and 1; at most two interior breakpoints."""
    a = first_preimage(f, ZERO)
    b = first_preimage(f, ONE)
    candidates = [_dedupe([a, ZERO, ONE, b]), _dedupe([a, ONE, ZERO, b])]
    best = min(candidates, key=lambda vs: (len(vs), _variation(vs)))
    return PLMap.through(best)


def endpoint_normalizer(f: PLMap) -> PLMap:
    """The map u used by endpoint_normalize; the identity when f already fixes 0 and 1."""
    require_surjection(f)
    if f.ys[0] == ZERO and f.ys[-1] == ONE:
        return identity_map()
    return normalizing_map(f)


def endpoint_normalize(f: PLMap) -> PLMap:
    """f ∘ u with 0 ↦ 0 and 1 ↦ 1; f itself when already normalised."""
    require_surjection(f)
    if f.ys[0] == ZERO and f.ys[-1] == ONE:
        return f
    return f.compose(normalizing_map(f))


def rational_peak_approx(f: PLMap, eps: Fraction) -> PLMap:
    """A rational PL surjection without constancy intervals within eps of f.

    Interior values snap to the grid 1/N with N = floor(4/eps) + 1 and every
    flat piece gets a tent of height 1/(4N) at its midpoint; endpoints stay.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    require_surjection(f)
    if not f.has_flats():
        return f
    n = floor(4 / eps) + 1
    bump = Fraction(1, 4 * n)
    ys = list(f.ys)
    for i in range(1, len(ys) - 1):
        ys[i] = Fraction(round(ys[i] * n), n)
    xs_out: List[Fraction] = [f.xs[0]]
    ys_out: List[Fraction] = [ys[0]]
    for i in range(1, len(ys)):
        if ys[i] == ys[i - 1]:
            mid = (f.xs[i - 1] + f.xs[i]) / 2
            xs_out.append(mid)
            ys_out.append(ys[i] + bump if ys[i] < ONE else ys[i] - bump)
        xs_out.append(f.xs[i])
        ys_out.append(ys[i])
    return PLMap(tuple(xs_out), tuple(ys_out)).normalized()
