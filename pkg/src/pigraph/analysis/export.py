"""DOT and JSON exports of transition systems."""

from __future__ import annotations

from typing import Any, Dict, List

import msgspec

from pigraph.analysis.lts import Lts
from pigraph.syntax.render import render


class TransitionDoc(msgspec.Struct, frozen=True):
    source: str
    label: str
    target: str


class LtsDocument(msgspec.Struct):
    states: Dict[str, str]
    initial: str
    transitions: List[TransitionDoc]
    truncated: bool
    clock_model: str
    gc_mode: str
    clocks: Dict[str, Any] = msgspec.field(default_factory=dict)


def _sorted_edges(lts: Lts) -> List[TransitionDoc]:
    ids = lts.state_ids()
    order = {key: i for i, key in enumerate(lts.states)}
    edges = sorted(lts.transitions, key=lambda t: (order[t.source], t.label.render(), order[t.target]))
    return [TransitionDoc(ids[t.source], t.label.render(), ids[t.target]) for t in edges]


def to_document(lts: Lts) -> LtsDocument:
    ids = lts.state_ids()
    states = {
        ids[key]: render(config) if config is not None else str(key)
        for key, config in lts.states.items()
    }
    clocks = {ids[key]: config.clock.to_builtins() for key, config in lts.states.items() if config is not None}
    return LtsDocument(
        states=states,
        initial=ids[lts.initial],
        transitions=_sorted_edges(lts),
        truncated=lts.truncated,
        clock_model=lts.clock_model,
        gc_mode=lts.gc_mode,
        clocks=clocks,
    )


def export_json(lts: Lts) -> str:
    raw = msgspec.json.encode(to_document(lts))
    return msgspec.json.format(raw, indent=2).decode("utf-8") + "\n"


def load_json(text: str | bytes) -> LtsDocument:
    try:
        return msgspec.json.decode(text, type=LtsDocument)
    except msgspec.ValidationError as e:
        raise ValueError(f"invalid lts document: {e}") from e


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(lts: Lts) -> str:
    ids = lts.state_ids()
    lines = ["digraph lts {", "  rankdir=LR;"]
    for key in lts.states:
        shape = "doublecircle" if key == lts.initial else "circle"
        lines.append(f"  {ids[key]} [shape={shape}];")
    for edge in _sorted_edges(lts):
        lines.append(f"  {edge.source} -> {edge.target} [label={_quote(edge.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
