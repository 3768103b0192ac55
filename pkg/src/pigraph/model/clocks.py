"""
Clock models.

A clock generates the indices of fresh names and answers the read-write
causality query n! < m?.  Two models are provided: the logical clock
(a natural number, strictly increasing) and the causal clock (a table
from the bottom element and fresh outputs to the fresh inputs created
after them), which allows indices to be reused once garbage collected.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Tuple, Type

from pigraph.errors import ClockModelError
from pigraph.model.names import Name

BOTTOM = 0


class ClockModel(str, Enum):
    LOGICAL = "logical"
    CAUSAL = "causal"


class Clock(ABC):
    model: ClockModel

    @classmethod
    @abstractmethod
    def init(cls) -> "Clock":
        pass

    @abstractmethod
    def next_o(self) -> int:
        pass

    @abstractmethod
    def next_i(self) -> int:
        pass

    @abstractmethod
    def tick_out(self) -> "Clock":
        pass

    @abstractmethod
    def tick_in(self) -> "Clock":
        pass

    @abstractmethod
    def precedes(self, n_out: Name, m_in: Name) -> bool:
        pass

    @abstractmethod
    def render(self) -> str:
        pass

    @abstractmethod
    def to_builtins(self) -> object:
        pass

    def names_of(self) -> FrozenSet[Name]:
        raise ClockModelError(f"names_of is undefined for the {self.model.value} clock model")


@dataclass(frozen=True)
class LogicalClock(Clock):
    value: int = 0
    model = ClockModel.LOGICAL

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"logical clock value must be >= 0, got {self.value}")

    @classmethod
    def init(cls) -> "LogicalClock":
        return cls(0)

    def next_o(self) -> int:
        return self.value + 1

    def next_i(self) -> int:
        return self.value + 1

    def tick_out(self) -> "LogicalClock":
        return LogicalClock(self.next_o())

    def tick_in(self) -> "LogicalClock":
        return LogicalClock(self.next_i())

    def precedes(self, n_out: Name, m_in: Name) -> bool:
        return n_out.index < m_in.index

    def render(self) -> str:
        return str(self.value)

    def to_builtins(self) -> int:
        return self.value


def _smallest_missing(used: Iterable[int]) -> int:
    taken = set(used)
    n = 1
    while n in taken:
        n += 1
    return n


@dataclass(frozen=True)
class CausalClock(Clock):
    """
    Entries are (output index, input indices) pairs sorted by output index;
    output index 0 stands for the bottom element, which is always present.
    """

    table: Tuple[Tuple[int, FrozenSet[int]], ...] = ((BOTTOM, frozenset()),)
    model = ClockModel.CAUSAL

    def __post_init__(self):
        keys = [k for k, _ in self.table]
        if not keys or keys[0] != BOTTOM:
            raise ValueError("causal clock must map the bottom element")
        if keys != sorted(set(keys)):
            raise ValueError("causal clock entries must be unique and sorted")

    @classmethod
    def init(cls) -> "CausalClock":
        return cls()

    @classmethod
    def from_mapping(cls, mapping: Dict[int, Iterable[int]]) -> "CausalClock":
        entries = {BOTTOM: frozenset()}
        entries.update({k: frozenset(v) for k, v in mapping.items()})
        return cls(tuple(sorted(entries.items())))

    def as_mapping(self) -> Dict[int, FrozenSet[int]]:
        return dict(self.table)

    def outputs(self) -> List[int]:
        return [k for k, _ in self.table if k != BOTTOM]

    def inputs(self) -> FrozenSet[int]:
        return frozenset(i for _, ins in self.table for i in ins)

    def next_o(self) -> int:
        return _smallest_missing(self.outputs())

    def next_i(self) -> int:
        return _smallest_missing(self.inputs())

    def tick_out(self) -> "CausalClock":
        mapping = self.as_mapping()
        mapping[self.next_o()] = frozenset()
        return CausalClock(tuple(sorted(mapping.items())))

    def tick_in(self) -> "CausalClock":
        fresh = self.next_i()
        return CausalClock(tuple((k, ins | {fresh}) for k, ins in self.table))

    def precedes(self, n_out: Name, m_in: Name) -> bool:
        ins = self.as_mapping().get(n_out.index)
        return ins is not None and m_in.index in ins

    def names_of(self) -> FrozenSet[Name]:
        outs = {Name.fresh_out(k) for k in self.outputs()}
        ins = {Name.fresh_in(i) for i in self.inputs()}
        return frozenset(outs | ins)

    def trimmed(self, keep_outputs: Iterable[int], live_inputs: Iterable[int]) -> "CausalClock":
        """Restrict the domain to bottom plus keep_outputs and every set to live_inputs."""
        keep = set(keep_outputs) | {BOTTOM}
        live = frozenset(live_inputs)
        return CausalClock(tuple((k, ins & live) for k, ins in self.table if k in keep))

    def render(self) -> str:
        parts = []
        for k, ins in self.table:
            head = "bot" if k == BOTTOM else f"{k}!"
            body = ",".join(f"{i}?" for i in sorted(ins))
            parts.append(f"{head}->{{{body}}}")
        return "<" + " ".join(parts) + ">"

    def to_builtins(self) -> List[Dict[str, object]]:
        return [
            {"out": "⊥" if k == BOTTOM else f"{k}!", "ins": [f"{i}?" for i in sorted(ins)]}
            for k, ins in self.table
        ]


CLOCK_MODELS: Dict[ClockModel, Type[Clock]] = {
    ClockModel.LOGICAL: LogicalClock,
    ClockModel.CAUSAL: CausalClock,
}


def initial_clock(model: ClockModel | str) -> Clock:
    try:
        cls = CLOCK_MODELS[ClockModel(model)]
    except (ValueError, KeyError):
        raise ClockModelError(f"unknown clock model: {model}")
    return cls.init()
