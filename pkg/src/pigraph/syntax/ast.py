"""Abstract syntax of .pig sources."""

from __future__ import annotations

from typing import Tuple, Union

import msgspec


class Span(msgspec.Struct, frozen=True):
    line: int = 0
    column: int = 0


class Silent(msgspec.Struct, frozen=True, tag="silent"):
    span: Span = Span()


class Output(msgspec.Struct, frozen=True, tag="output"):
    chan: str
    datum: str
    span: Span = Span()


class Input(msgspec.Struct, frozen=True, tag="input"):
    chan: str
    binder: str
    span: Span = Span()


class Match(msgspec.Struct, frozen=True, tag="match"):
    left: str
    right: str
    span: Span = Span()


class Sum(msgspec.Struct, frozen=True, tag="sum"):
    branches: Tuple["ProcessAst", ...]
    span: Span = Span()


class Par(msgspec.Struct, frozen=True, tag="par"):
    branches: Tuple["ProcessAst", ...]
    span: Span = Span()


PrefixAst = Union[Silent, Output, Input, Match, Sum, Par]


class ProcessAst(msgspec.Struct, frozen=True):
    # the terminating 0 is implicit after the last prefix
    prefixes: Tuple[PrefixAst, ...] = ()
    span: Span = Span()


class IteratorAst(msgspec.Struct, frozen=True):
    privates: Tuple[str, ...]
    binders: Tuple[str, ...]
    body: ProcessAst
    span: Span = Span()


class GraphAst(msgspec.Struct, frozen=True):
    free_names: Tuple[str, ...]
    restrictions: Tuple[str, ...]
    iterators: Tuple[IteratorAst, ...]
    span: Span = Span()
