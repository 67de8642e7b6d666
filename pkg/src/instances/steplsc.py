"""Lower-semicontinuous N̄-valued step functions on [0, 1].

A function is stored on a rational partition 0 = b_0 < ... < b_m = 1 by its
values at the breakpoints and on the open cells between them. Lower
semicontinuity means every point value is at most the adjacent cell values.
Finite discrete base spaces are the simplicial semigroups.
"""

from bisect import bisect_left
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Sequence, Tuple, Union

from ..core.semigroup import CuSemigroup
from ..utils.codec import decode_number, encode_number
from ..utils.errors import RepresentationError, StructuralError
from .extnat import INF, Ext, decode_ext, encode_ext, ext_add, ext_mul, is_ext, is_inf
from .simplicial import Simplicial

ZERO = Fraction(0)
ONE = Fraction(1)


class Step(NamedTuple):
    breaks: Tuple[Fraction, ...]
    points: Tuple[Ext, ...]
    cells: Tuple[Ext, ...]


# ===== Construction and normal form =====

def is_lower_semicontinuous(breaks: Sequence[Fraction], points: Sequence[Ext], cells: Sequence[Ext]) -> bool:
    m = len(cells)
    for i in range(m + 1):
        if i > 0 and points[i] > cells[i - 1]:
            return False
        if i < m and points[i] > cells[i]:
            return False
    return True


def normalize(breaks: Sequence[Fraction], points: Sequence[Ext], cells: Sequence[Ext]) -> Step:
    """Drop interior breakpoints where nothing changes."""
    b: List[Fraction] = [breaks[0]]
    p: List[Ext] = [points[0]]
    c: List[Ext] = []
    for i in range(1, len(breaks)):
        if i < len(breaks) - 1 and cells[i - 1] == points[i] == cells[i]:
            continue
        c.append(cells[i - 1])
        b.append(breaks[i])
        p.append(points[i])
    return Step(tuple(b), tuple(p), tuple(c))


def make_step(breaks: Iterable[Any], points: Iterable[Ext], cells: Iterable[Ext]) -> Step:
    """Validated constructor; raises RepresentationError on malformed data."""
    b = tuple(Fraction(t) for t in breaks)
    p, c = tuple(points), tuple(cells)
    if len(b) < 2 or b[0] != ZERO or b[-1] != ONE or any(x >= y for x, y in zip(b, b[1:])):
        raise RepresentationError(f"Breakpoints must increase from 0 to 1: {b}")
    if len(p) != len(b) or len(c) != len(b) - 1:
        raise RepresentationError("Need one value per breakpoint and per cell")
    if not all(is_ext(v) for v in p + c):
        raise RepresentationError("Values must be extended naturals")
    if not is_lower_semicontinuous(b, p, c):
        raise RepresentationError("Point values exceed an adjacent cell value")
    return normalize(b, p, c)


def constant(v: Ext) -> Step:
    return Step((ZERO, ONE), (v, v), (v,))


def from_evaluator(breaks: Iterable[Fraction], at_point: Callable[[Fraction], Ext], on_cell: Callable[[Fraction, Fraction], Ext]) -> Step:
    b = sorted(set(Fraction(t) for t in breaks) | {ZERO, ONE})
    points = [at_point(t) for t in b]
    cells = [on_cell(x, y) for x, y in zip(b, b[1:])]
    return make_step(b, points, cells)


def interval_indicator(a: Any, b: Any, left_closed: bool = False, right_closed: bool = False) -> Step:
    """Indicator of the interval from a to b; must be open in [0, 1]."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        return constant(0)
    if (left_closed and a != ZERO) or (right_closed and b != ONE):
        raise RepresentationError(f"Interval from {a} to {b} is not open in [0,1]")

    def at_point(t: Fraction) -> Ext:
        if a < t < b:
            return 1
        if t == a:
            return 1 if left_closed else 0
        if t == b:
            return 1 if right_closed else 0
        return 0

    return from_evaluator([a, b], at_point, lambda x, y: 1 if a <= x and y <= b else 0)


def upper_set(t: Any) -> Step:
    """1_{(t,1]}."""
    return interval_indicator(t, 1, right_closed=True)


def ball(x: Any, r: Any) -> Step:
    """Indicator of B(x, r) ∩ [0, 1]."""
    x, r = Fraction(x), Fraction(r)
    if r <= 0:
        return constant(0)
    lo, hi = x - r, x + r
    return interval_indicator(max(lo, ZERO), min(hi, ONE), left_closed=lo < 0, right_closed=hi > 1)


# ===== Evaluation and refinement =====

def value_at(f: Step, t: Fraction) -> Ext:
    i = bisect_left(f.breaks, t)
    if i < len(f.breaks) and f.breaks[i] == t:
        return f.points[i]
    return f.cells[i - 1]


def refine(f: Step, breaks: Sequence[Fraction]) -> Tuple[Tuple[Ext, ...], Tuple[Ext, ...]]:
    """Point and cell values of f on a finer sorted partition."""
    points = tuple(value_at(f, t) for t in breaks)
    cells = tuple(value_at(f, (x + y) / 2) for x, y in zip(breaks, breaks[1:]))
    return points, cells


def common_breaks(*fs: Step) -> Tuple[Fraction, ...]:
    merged = set()
    for f in fs:
        merged.update(f.breaks)
    return tuple(sorted(merged))


def pointwise(f: Step, g: Step, op: Callable[[Ext, Ext], Ext]) -> Step:
    b = common_breaks(f, g)
    fp, fc = refine(f, b)
    gp, gc = refine(g, b)
    return normalize(b, tuple(op(x, y) for x, y in zip(fp, gp)), tuple(op(x, y) for x, y in zip(fc, gc)))


def map_values(f: Step, op: Callable[[Ext], Ext]) -> Step:
    return normalize(f.breaks, tuple(op(v) for v in f.points), tuple(op(v) for v in f.cells))


def _window_values(f: Step, lo: Fraction, hi: Fraction, closed: bool) -> List[Ext]:
    values: List[Ext] = []
    for i, b in enumerate(f.breaks):
        if lo < b < hi or (closed and (b == lo or b == hi)):
            values.append(f.points[i])
    for i, v in enumerate(f.cells):
        if f.breaks[i] < hi and f.breaks[i + 1] > lo:
            values.append(v)
    return values


def _reshape(f: Step, delta: Fraction, pick: Callable[[List[Ext]], Ext], closed: bool, extra: Sequence[Fraction] = ()) -> Step:
    """Replace each value by the max/min of f over a δ-window."""
    shifted = {b + s for b in f.breaks for s in (-delta, delta)}
    b = sorted({t for t in shifted if ZERO < t < ONE} | set(f.breaks) | set(extra))
    points = [pick(_window_values(f, t - delta, t + delta, closed)) for t in b]
    cells = []
    for x, y in zip(b, b[1:]):
        mid = (x + y) / 2
        cells.append(pick(_window_values(f, mid - delta, mid + delta, closed)))
    return normalize(b, points, cells)


def dilate(f: Step, delta: Fraction) -> Step:
    """x ↦ sup of f over the open δ-ball; {dilate ≥ k} is the δ-neighbourhood of closure{f ≥ k}."""
    return _reshape(f, delta, max, closed=False)


def erode(f: Step, delta: Fraction) -> Step:
    """x ↦ min of f over the closed δ-ball."""
    return _reshape(f, delta, min, closed=True)


def encode_step(f: Step) -> Dict[str, Any]:
    return {
        "breaks": [encode_number(t) for t in f.breaks],
        "points": [encode_ext(v) for v in f.points],
        "cells": [encode_ext(v) for v in f.cells],
    }


def decode_step(data: Dict[str, Any]) -> Step:
    return make_step(
        [decode_number(t) for t in data["breaks"]],
        [decode_ext(v) for v in data["points"]],
        [decode_ext(v) for v in data["cells"]],
    )


# ===== The semigroup =====

class IntervalLsc(CuSemigroup):
    """Lsc([0,1], N̄) restricted to rational step functions.

    f << g iff f is finite and g dominates the upper envelope of f at every
    breakpoint of the common refinement, i.e. closure{f >= k} ⊆ {g >= k}.
    """

    def __init__(self, grid: Sequence[Fraction] = ()) -> None:
        base = sorted({Fraction(t) for t in grid} | {ZERO, ONE})
        if base[0] < ZERO or base[-1] > ONE:
            raise StructuralError(f"Grid must lie in [0,1]: {base}")
        self.grid: Tuple[Fraction, ...] = tuple(base)
        label = ",".join(str(t) for t in self.grid[1:-1])
        super().__init__(f"Lsc[0,1]({label})" if label else "Lsc[0,1]")

    @property
    def zero(self) -> Step:
        return constant(0)

    @property
    def unit(self) -> Step:
        return constant(1)

    def add(self, x: Step, y: Step) -> Step:
        return pointwise(x, y, ext_add)

    def leq(self, x: Step, y: Step) -> bool:
        b = common_breaks(x, y)
        xp, xc = refine(x, b)
        yp, yc = refine(y, b)
        return all(a <= c for a, c in zip(xp, yp)) and all(a <= c for a, c in zip(xc, yc))

    def way_below(self, x: Step, y: Step) -> bool:
        if any(is_inf(v) for v in x.points + x.cells):
            return False
        b = common_breaks(x, y)
        xp, xc = refine(x, b)
        yp, _ = refine(y, b)
        m = len(xc)
        for i in range(m + 1):
            envelope = xp[i]
            if i > 0:
                envelope = max(envelope, xc[i - 1])
            if i < m:
                envelope = max(envelope, xc[i])
            if envelope > yp[i]:
                return False
        return True

    def mesh(self, depth: int) -> Tuple[Fraction, ...]:
        scale = 2 ** depth
        return tuple(sorted(set(self.grid) | {Fraction(k, scale) for k in range(scale + 1)}))

    def grid_intervals(self, depth: int) -> List[Step]:
        """Indicators of the open intervals with endpoints on the depth mesh."""
        mesh = self.mesh(depth)
        result: List[Step] = []
        for i, a in enumerate(mesh):
            for b in mesh[i + 1:]:
                for lc in ((False, True) if a == ZERO else (False,)):
                    for rc in ((False, True) if b == ONE else (False,)):
                        result.append(interval_indicator(a, b, lc, rc))
        return result

    def basis_level(self, depth: int) -> List[Step]:
        indicators = self.grid_intervals(depth)
        return indicators + [map_values(f, lambda v: ext_mul(2, v)) for f in indicators] + [constant(INF)]

    def interpolate(self, low: Step, high: Step) -> Step:
        b = common_breaks(low, high)
        delta = min(y - x for x, y in zip(b, b[1:])) / 2
        return dilate(low, delta)

    def approximating_chain(self, x: Step, length: int) -> List[Step]:
        if self.is_compact(x):
            return [x] * length
        chain = []
        for l in range(length):
            eroded = erode(x, Fraction(1, 2 ** (l + 2)))
            chain.append(map_values(eroded, lambda v, cap=l + 1: min(v, cap)))
        return chain

    def multiple(self, k: int, x: Step) -> Step:
        return map_values(x, lambda v: ext_mul(k, v))

    def infinite_multiple(self, x: Step) -> Step:
        return map_values(x, lambda v: ext_mul(INF, v))

    def encode(self, x: Step) -> Any:
        return encode_step(x)

    def decode(self, data: Any) -> Step:
        return decode_step(data)

    def contains(self, x: Any) -> bool:
        if not isinstance(x, Step):
            return False
        try:
            return make_step(x.breaks, x.points, x.cells) == x
        except RepresentationError:
            return False

    def describe(self) -> Dict[str, Any]:
        return {"kind": "steplsc", "grid": [encode_number(t) for t in self.grid]}


def make_steplsc(grid: Union[int, Sequence[Any]]) -> CuSemigroup:
    """Lsc(X_r, N̄) = N̄^r for a finite discrete X_r, or step functions on [0, 1]."""
    if isinstance(grid, int):
        if grid < 1:
            raise StructuralError(f"A finite base space needs at least one point, got {grid}")
        return Simplicial(grid)
    if len(grid) == 0:
        raise StructuralError("Empty grid")
    return IntervalLsc([Fraction(t) for t in grid])
