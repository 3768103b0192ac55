"""
Static place/box graph and the dynamic configuration built on top of it.

The static part never changes along transitions; only the clock, the
partition, the marking and the box instantiation evolve.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from pigraph.model.clocks import Clock, ClockModel
from pigraph.model.names import Name, Partition


class PlaceType(str, Enum):
    ZERO = "0"
    TAU = "tau"
    IN = "i"
    OUT = "o"
    MATCH = "="
    SUM = "sum"
    PAR = "par"
    ITER = "*"


@dataclass(frozen=True)
class Place:
    id: int
    type: PlaceType
    iterator: int
    data: Optional[int] = None       # datum, binder, or left operand of a match
    data2: Optional[int] = None      # right operand of a match
    in_link: Optional[int] = None    # channel of an input
    out_link: Optional[int] = None   # channel of an output
    ctl: Tuple[int, ...] = ()
    closes: Optional[int] = None     # 0-places: the sum/par/iterator place they terminate
    cont: Optional[int] = None       # sum/par places: their terminating place

    @property
    def channel(self) -> Optional[int]:
        return self.out_link if self.out_link is not None else self.in_link


@dataclass(frozen=True)
class Box:
    id: int
    name: Name
    iterator: Optional[int] = None   # None for free names and restrictions


@dataclass(frozen=True)
class IteratorInfo:
    index: int
    star: int
    zero: int
    resets: Tuple[int, ...]          # private and binder boxes reinitialised by [iter0]


@dataclass(frozen=True, eq=False)
class StaticGraph:
    places: Tuple[Place, ...]
    boxes: Tuple[Box, ...]
    iterators: Tuple[IteratorInfo, ...]
    regions: Dict[int, Tuple[FrozenSet[int], ...]] = field(default_factory=dict)
    branch_zeros: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    eps_bound: int = 0
    clock_model: ClockModel = ClockModel.CAUSAL

    def place(self, pid: int) -> Place:
        return self.places[pid]

    def box_names(self) -> Tuple[Name, ...]:
        return tuple(b.name for b in self.boxes)

    def fingerprint(self) -> tuple:
        """Hashable snapshot of the whole static structure."""
        return (
            self.places,
            self.boxes,
            self.iterators,
            tuple(sorted((k, v) for k, v in self.regions.items())),
            tuple(sorted(self.branch_zeros.items())),
            self.eps_bound,
        )


@dataclass(frozen=True)
class Configuration:
    static: StaticGraph
    clock: Clock
    gamma: Partition
    marking: FrozenSet[int]
    inst: Tuple[Name, ...]

    @cached_property
    def cod(self) -> FrozenSet[Name]:
        return frozenset(self.inst)

    def evolve(self, **changes) -> "Configuration":
        return replace(self, **changes)

    def move(self, consumed: Iterable[int], produced: Iterable[int]) -> FrozenSet[int]:
        return (self.marking - frozenset(consumed)) | frozenset(produced)

    def instantiate(self, box: int, value: Name) -> Tuple[Name, ...]:
        inst = list(self.inst)
        inst[box] = value
        return tuple(inst)

    def is_default(self, box: int) -> bool:
        return self.inst[box] == self.static.boxes[box].name
