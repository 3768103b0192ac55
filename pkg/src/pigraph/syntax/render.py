"""Textual forms: configurations as terms with marked redexes, and ASTs back to source."""

from __future__ import annotations

from typing import List

from pigraph.syntax.ast import GraphAst, Input, Match, Output, Par, ProcessAst, Silent, Sum
from pigraph.syntax.graph import Configuration, Place, PlaceType


def _box(config: Configuration, bid: int) -> str:
    name = config.static.boxes[bid].name
    value = config.inst[bid]
    if value == name:
        return name.render()
    return f"{name.render()}|{value.render()}"


def _prefix(config: Configuration, place: Place) -> str:
    ptype = place.type
    if ptype == PlaceType.TAU:
        return "tau"
    if ptype == PlaceType.OUT:
        return f"{_box(config, place.out_link)}!<{_box(config, place.data)}>"
    if ptype == PlaceType.IN:
        return f"{_box(config, place.in_link)}?({_box(config, place.data)})"
    if ptype == PlaceType.MATCH:
        return f"[{_box(config, place.data)}={_box(config, place.data2)}]"
    if ptype == PlaceType.ZERO:
        return "0"
    branches = [_process(config, initial) for initial in place.ctl]
    if ptype == PlaceType.SUM:
        return "sum{ " + " + ".join(branches) + " }"
    return "par{ " + " || ".join(branches) + " }"


def _process(config: Configuration, start: int) -> str:
    static = config.static
    parts: List[str] = []
    pid = start
    while True:
        place = static.place(pid)
        text = _prefix(config, place)
        parts.append("{" + text + "}" if pid in config.marking else text)
        if place.type == PlaceType.ZERO:
            return ".".join(parts)
        pid = place.cont if place.type in (PlaceType.SUM, PlaceType.PAR) else place.ctl[0]


def render(config: Configuration) -> str:
    static = config.static
    iterators = []
    for it in static.iterators:
        body = _process(config, static.place(it.star).ctl[0])
        if it.star in config.marking:
            iterators.append(f"*{{ {body} }}")
        else:
            iterators.append(f"*[ {body} ]")
    return f"{config.clock.render()};{config.gamma.render()} |- " + " || ".join(iterators)


def _source_prefix(p) -> str:
    if isinstance(p, Silent):
        return "tau"
    if isinstance(p, Output):
        return f"{p.chan}!<{p.datum}>"
    if isinstance(p, Input):
        return f"{p.chan}?({p.binder})"
    if isinstance(p, Match):
        return f"[{p.left}={p.right}]"
    if isinstance(p, Sum):
        return "sum{ " + " + ".join(_source_process(b) for b in p.branches) + " }"
    if isinstance(p, Par):
        return "par{ " + " || ".join(_source_process(b) for b in p.branches) + " }"
    raise TypeError(f"unknown prefix {type(p).__name__}")


def _source_process(proc: ProcessAst) -> str:
    return ".".join([_source_prefix(p) for p in proc.prefixes] + ["0"])


def format_source(ast: GraphAst) -> str:
    """Pretty-print an AST in the concrete grammar; parse(format_source(a)) has the shape of a."""
    lines = [f"free({', '.join(ast.free_names)}) restr({', '.join(ast.restrictions)})"]
    for it in ast.iterators:
        lines.append(
            f"*[ priv({', '.join(it.privates)}) bind({', '.join(it.binders)}) {_source_process(it.body)} ]"
        )
    return "\n".join(lines) + "\n"
