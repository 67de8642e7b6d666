"""Demand schedules for Fraïssé sequence construction."""

import random
from dataclasses import dataclass
from itertools import islice
from typing import Any, Dict, Iterator, List, Optional

from ..utils.errors import PreconditionError


@dataclass(frozen=True)
class Demand:
    """(stage, morphism index, basis level), or an object demand when `obj` is set.

    A morphism demand asks that the `morphism`-th map α out of stage
    `stage` returns: some β with β∘α ≃_{B_level} σ_{stage,j}. An object
    demand asks that the `obj`-th object maps into some stage.
    """
    index: int
    stage: int = -1
    morphism: int = -1
    level: int = -1
    obj: Optional[int] = None

    @property
    def is_object(self) -> bool:
        return self.obj is not None

    def to_dict(self) -> Dict[str, Any]:
        if self.is_object:
            return {"index": self.index, "object": self.obj}
        return {"index": self.index, "stage": self.stage, "morphism": self.morphism, "level": self.level}


class DemandSchedule:
    """Every triple (n, a, k) exactly once, diagonal by diagonal.

    Triples with n + a + k = d form diagonal d and are shuffled by a
    generator seeded with `seed`; object demand d follows diagonal d.
    """

    def __init__(self, seed: int = 0, objects: bool = True) -> None:
        self.seed: int = seed
        self.objects: bool = objects

    def __iter__(self) -> Iterator[Demand]:
        rng = random.Random(self.seed)
        index = 0
        d = 0
        while True:
            diagonal = [(n, a, d - n - a) for n in range(d + 1) for a in range(d - n + 1)]
            rng.shuffle(diagonal)
            for n, a, k in diagonal:
                yield Demand(index, n, a, k)
                index += 1
            if self.objects:
                yield Demand(index, obj=d)
                index += 1
            d += 1

    def take(self, count: int) -> List[Demand]:
        return list(islice(iter(self), count))

    def index_of(self, stage: int, morphism: int, level: int) -> Demand:
        """The scheduled demand for a triple; it lies on diagonal stage + morphism + level."""
        if min(stage, morphism, level) < 0:
            raise PreconditionError(f"Demand triple ({stage}, {morphism}, {level}) has a negative entry")
        for demand in self:
            if not demand.is_object and (demand.stage, demand.morphism, demand.level) == (stage, morphism, level):
                return demand
        raise AssertionError("unreachable: every triple is scheduled")

    def to_dict(self) -> Dict[str, Any]:
        return {"seed": self.seed, "objects": self.objects}
