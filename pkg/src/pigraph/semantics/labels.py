"""Transition labels and engine steps."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

import msgspec

from pigraph.model.names import Name
from pigraph.syntax.graph import Configuration


class LabelKind(IntEnum):
    TAU = 0
    EPSILON = 1
    OUT = 2
    IN = 3


class Label(msgspec.Struct, frozen=True, order=True):
    kind: LabelKind
    chan: Optional[Name] = None
    datum: Optional[Name] = None

    def __post_init__(self):
        carries = self.kind in (LabelKind.OUT, LabelKind.IN)
        if carries and (self.chan is None or self.datum is None):
            raise ValueError(f"{self.kind.name.lower()} label needs a channel and a datum")
        if not carries and (self.chan is not None or self.datum is not None):
            raise ValueError(f"{self.kind.name.lower()} label carries no names")

    @classmethod
    def out(cls, chan: Name, datum: Name) -> "Label":
        return cls(LabelKind.OUT, chan, datum)

    @classmethod
    def inp(cls, chan: Name, datum: Name) -> "Label":
        return cls(LabelKind.IN, chan, datum)

    @property
    def is_epsilon(self) -> bool:
        return self.kind == LabelKind.EPSILON

    def render(self) -> str:
        if self.kind == LabelKind.TAU:
            return "tau"
        if self.kind == LabelKind.EPSILON:
            return "eps"
        if self.kind == LabelKind.OUT:
            return f"{self.chan.render()}!<{self.datum.render()}>"
        return f"{self.chan.render()}?({self.datum.render()})"

    def __str__(self) -> str:
        return self.render()


TAU = Label(LabelKind.TAU)
EPSILON = Label(LabelKind.EPSILON)


@dataclass(frozen=True)
class Step:
    label: Label
    target: Configuration
    rule: str
