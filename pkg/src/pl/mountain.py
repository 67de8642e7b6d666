"""Mountain climbing: reparameterise two PL surjections so they agree.

For f1, f2 fixing the endpoints and free of constancy intervals, the level
set {(x, y) : f1(x) = f2(y)} is a finite union of straight segments, one
per rectangle of the breakpoint grid. A path in that graph from (0, 0) to
(1, 1), read off coordinatewise, gives g1 and g2 with f1 ∘ g1 = f2 ∘ g2.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from ..utils.errors import PreconditionError, RepresentationError
from ..utils.logger import get_logger
from .plmap import ONE, ZERO, PLMap

logger = get_logger(__name__)

Vertex = Tuple[Fraction, Fraction]


def _inverse(x0: Fraction, x1: Fraction, y0: Fraction, y1: Fraction, v: Fraction) -> Fraction:
    return x0 + (v - y0) * (x1 - x0) / (y1 - y0)


@dataclass
class LevelSetGraph:
    """Vertices and straight edges of the level set, one edge per grid rectangle."""
    vertices: Set[Vertex] = field(default_factory=set)
    adjacency: Dict[Vertex, Set[Vertex]] = field(default_factory=dict)

    @staticmethod
    def build(f1: PLMap, f2: PLMap) -> 'LevelSetGraph':
        graph = LevelSetGraph()
        for x0, x1, a0, a1 in f1.pieces:
            for y0, y1, b0, b1 in f2.pieces:
                lo = max(min(a0, a1), min(b0, b1))
                hi = min(max(a0, a1), max(b0, b1))
                if lo >= hi:
                    continue
                start = (_inverse(x0, x1, a0, a1, lo), _inverse(y0, y1, b0, b1, lo))
                end = (_inverse(x0, x1, a0, a1, hi), _inverse(y0, y1, b0, b1, hi))
                graph.add_edge(start, end)
        return graph

    def add_edge(self, u: Vertex, v: Vertex) -> None:
        self.vertices.update((u, v))
        self.adjacency.setdefault(u, set()).add(v)
        self.adjacency.setdefault(v, set()).add(u)

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency.get(v, ()))

    def shortest_path(self, source: Vertex, target: Vertex) -> Optional[List[Vertex]]:
        """Lexicographically least vertex sequence among the shortest paths.

        Breadth-first with neighbours expanded in sorted order: each vertex
        keeps the first parent that reaches it, so its tree path is the
        least shortest path from `source`, and the queue holds each layer
        in that order.
        """
        parent: Dict[Vertex, Optional[Vertex]] = {source: None}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if u == target:
                break
            for v in sorted(self.adjacency.get(u, ())):
                if v not in parent:
                    parent[v] = u
                    queue.append(v)
        if target not in parent:
            return None
        path: List[Vertex] = []
        node: Optional[Vertex] = target
        while node is not None:
            path.append(node)
            node = parent[node]
        return path[::-1]


def _check_climbable(f: PLMap, name: str) -> None:
    if f.domain != (ZERO, ONE):
        raise PreconditionError(f"{name} must be defined on [0,1]")
    if f.ys[0] != ZERO or f.ys[-1] != ONE:
        raise PreconditionError(f"{name} must fix the endpoints (0 ↦ 0, 1 ↦ 1)")
    if f.has_flats():
        raise PreconditionError(f"{name} has a constancy interval")
    if not f.is_surjective():
        raise PreconditionError(f"{name} must map onto [0,1]")


def mountain_climb(f1: PLMap, f2: PLMap) -> Tuple[PLMap, PLMap]:
    """PL surjections g1, g2 with f1 ∘ g1 = f2 ∘ g2 exactly."""
    _check_climbable(f1, "f1")
    _check_climbable(f2, "f2")
    graph = LevelSetGraph.build(f1, f2)
    path = graph.shortest_path((ZERO, ZERO), (ONE, ONE))
    if path is None:
        raise RepresentationError("Level set has no path from (0,0) to (1,1)")
    steps = len(path) - 1
    params = [Fraction(k, steps) for k in range(steps + 1)]
    g1 = PLMap(tuple(params), tuple(x for x, _ in path)).normalized()
    g2 = PLMap(tuple(params), tuple(y for _, y in path)).normalized()
    logger.debug(
        f"Mountain climb found a path with {steps} segments",
        extra={"extra_fields": {"vertices": len(graph.vertices)}},
    )
    return g1, g2
