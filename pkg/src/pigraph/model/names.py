"""
Names and the dynamic equality partition.

A name is one of six kinds: the four static kinds declared in a model
(free, binder, restriction, private) and the two kinds of fresh names
generated by the clock (n! for extruded outputs, n? for received inputs).
The partition records which free/fresh names have been equated by a
match or a synchronisation; singleton classes are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import TYPE_CHECKING, FrozenSet, Iterable, List, Tuple

import msgspec

from pigraph.errors import PartitionError

if TYPE_CHECKING:
    from pigraph.model.clocks import Clock


class NameKind(IntEnum):
    # declaration order is the canonical ordering
    FREE = 0
    BINDER = 1
    RESTRICTION = 2
    PRIVATE = 3
    FRESH_OUT = 4
    FRESH_IN = 5


_STATIC_KINDS = {NameKind.FREE, NameKind.BINDER, NameKind.RESTRICTION, NameKind.PRIVATE}
_PARTITION_KINDS = {NameKind.FREE, NameKind.FRESH_OUT, NameKind.FRESH_IN}
_SIGILS = {
    NameKind.FREE: "",
    NameKind.BINDER: "?",
    NameKind.RESTRICTION: "^",
    NameKind.PRIVATE: "$",
}


class Name(msgspec.Struct, frozen=True, order=True):
    kind: NameKind
    ident: str = ""
    index: int = 0

    def __post_init__(self):
        if self.kind in _STATIC_KINDS:
            if not self.ident:
                raise ValueError(f"{self.kind.name.lower()} name needs an identifier")
            if self.index:
                raise ValueError("static names carry no index")
        else:
            if self.ident:
                raise ValueError("fresh names carry no identifier")
            if self.index < 1:
                raise ValueError(f"fresh name index must be >= 1, got {self.index}")

    @classmethod
    def free(cls, ident: str) -> "Name":
        return cls(NameKind.FREE, ident)

    @classmethod
    def binder(cls, ident: str) -> "Name":
        return cls(NameKind.BINDER, ident)

    @classmethod
    def restriction(cls, ident: str) -> "Name":
        return cls(NameKind.RESTRICTION, ident)

    @classmethod
    def private(cls, ident: str) -> "Name":
        return cls(NameKind.PRIVATE, ident)

    @classmethod
    def fresh_out(cls, index: int) -> "Name":
        return cls(NameKind.FRESH_OUT, index=index)

    @classmethod
    def fresh_in(cls, index: int) -> "Name":
        return cls(NameKind.FRESH_IN, index=index)

    @property
    def is_private(self) -> bool:
        return self.kind in (NameKind.RESTRICTION, NameKind.PRIVATE)

    @property
    def is_public(self) -> bool:
        return not self.is_private

    @property
    def is_static(self) -> bool:
        return self.kind in _STATIC_KINDS

    @property
    def in_partition_carrier(self) -> bool:
        return self.kind in _PARTITION_KINDS

    def render(self) -> str:
        if self.kind == NameKind.FRESH_OUT:
            return f"{self.index}!"
        if self.kind == NameKind.FRESH_IN:
            return f"{self.index}?"
        return f"{_SIGILS[self.kind]}{self.ident}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Partition:
    """Non-singleton equality classes; everything else is implicitly alone."""

    classes: FrozenSet[FrozenSet[Name]] = field(default_factory=frozenset)

    def __post_init__(self):
        seen = set()
        for cls in self.classes:
            if len(cls) < 2:
                raise PartitionError("singleton classes are implicit and must not be stored")
            for n in cls:
                if not n.in_partition_carrier:
                    raise PartitionError(f"name {n} cannot belong to a partition")
                if n in seen:
                    raise PartitionError(f"name {n} appears in two classes")
                seen.add(n)

    def members(self) -> FrozenSet[Name]:
        return frozenset(n for cls in self.classes for n in cls)

    def sorted_classes(self) -> List[Tuple[Name, ...]]:
        return sorted(tuple(sorted(cls)) for cls in self.classes)

    def render(self) -> str:
        if not self.classes:
            return "{}"
        return ",".join("{" + ",".join(n.render() for n in cls) + "}" for cls in self.sorted_classes())

    def __bool__(self) -> bool:
        return bool(self.classes)


EMPTY_PARTITION = Partition()


def class_of(gamma: Partition, n: Name) -> FrozenSet[Name]:
    if not n.in_partition_carrier:
        raise PartitionError(f"{n} ({n.kind.name.lower()}) is never part of the partition")
    for cls in gamma.classes:
        if n in cls:
            return cls
    return frozenset((n,))


def may_equal(clock: "Clock", a: Name, b: Name) -> bool:
    if a == b:
        return True
    loose = (NameKind.FREE, NameKind.FRESH_IN)
    if a.kind in loose and b.kind in loose:
        return True
    if a.kind == NameKind.FRESH_OUT and b.kind == NameKind.FRESH_IN:
        return clock.precedes(a, b)
    if a.kind == NameKind.FRESH_IN and b.kind == NameKind.FRESH_OUT:
        return clock.precedes(b, a)
    return False


def compatible(gamma: Partition, clock: "Clock", a: Name, b: Name) -> bool:
    # names outside the carrier only ever equal themselves
    if not (a.in_partition_carrier and b.in_partition_carrier):
        return a == b
    left = class_of(gamma, a)
    right = class_of(gamma, b)
    return all(may_equal(clock, n, m) for n in left for m in right)


def refine(gamma: Partition, clock: "Clock", a: Name, b: Name) -> Partition:
    if not compatible(gamma, clock, a, b):
        raise PartitionError(f"{a} and {b} are not compatible under {gamma.render()}")
    if a == b:
        return gamma
    left = class_of(gamma, a)
    right = class_of(gamma, b)
    if left == right:
        return gamma
    merged = left | right
    kept = {cls for cls in gamma.classes if cls != left and cls != right}
    kept.add(merged)
    return Partition(frozenset(kept))


def partition_of(classes: Iterable[Iterable[Name]]) -> Partition:
    """Build a partition from explicit classes, dropping singletons."""
    return Partition(frozenset(frozenset(c) for c in classes if len(set(c)) > 1))
