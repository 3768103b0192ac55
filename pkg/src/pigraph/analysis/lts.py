"""
Finite ground transition systems.

States are observation endpoints reached from the (collected) initial
configuration; epsilon moves never show up as transitions.  Exploration
is breadth first so that state numbering is stable.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Tuple

from pigraph.model.clocks import CausalClock, ClockModel
from pigraph.model.names import Name
from pigraph.semantics.engine import observable_steps
from pigraph.semantics.gc import GcMode, gc
from pigraph.semantics.labels import Label, Step
from pigraph.syntax.graph import Configuration

log = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 100_000


class StateKey(NamedTuple):
    clock: Tuple
    gamma: Tuple[Tuple[Name, ...], ...]
    marking: Tuple[int, ...]
    inst: Tuple[Tuple[int, Name], ...]


def state_key(config: Configuration) -> StateKey:
    clock = config.clock
    clock_part = (clock.model.value, clock.table if isinstance(clock, CausalClock) else clock.value)
    boxes = config.static.boxes
    return StateKey(
        clock=clock_part,
        gamma=tuple(config.gamma.sorted_classes()),
        marking=tuple(sorted(config.marking)),
        inst=tuple((b, n) for b, n in enumerate(config.inst) if n != boxes[b].name),
    )


class Transition(NamedTuple):
    source: Hashable
    label: Label
    target: Hashable


@dataclass
class Lts:
    states: Dict[Hashable, Optional[Configuration]]
    initial: Hashable
    transitions: List[Transition] = field(default_factory=list)
    truncated: bool = False
    clock_model: str = ClockModel.CAUSAL.value
    gc_mode: str = GcMode.STEP.value

    @classmethod
    def from_transitions(
        cls,
        initial: Hashable,
        transitions: Iterable[Tuple[Hashable, Label, Hashable]],
        clock_model: str = ClockModel.CAUSAL.value,
        gc_mode: str = GcMode.STEP.value,
    ) -> "Lts":
        """Detached system without configurations, e.g. a hand-written reference."""
        states: Dict[Hashable, Optional[Configuration]] = {initial: None}
        edges = []
        for source, label, target in transitions:
            states.setdefault(source, None)
            states.setdefault(target, None)
            edges.append(Transition(source, label, target))
        return cls(states, initial, _unique(edges), False, clock_model, gc_mode)

    def state_ids(self) -> Dict[Hashable, str]:
        return {key: f"s{i}" for i, key in enumerate(self.states)}

    def successors(self, key: Hashable) -> List[Transition]:
        return [t for t in self.transitions if t.source == key]

    def stats(self) -> Dict[str, object]:
        degree = Counter(t.source for t in self.transitions)
        return {
            "states": len(self.states),
            "transitions": len(self.transitions),
            "truncated": self.truncated,
            "max_out_degree": max(degree.values(), default=0),
            "labels": sorted({t.label.render() for t in self.transitions}),
        }


def _unique(transitions: Iterable[Transition]) -> List[Transition]:
    seen = set()
    out = []
    for t in transitions:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def build_lts(
    config: Configuration,
    max_states: int = DEFAULT_MAX_STATES,
    gc_mode: GcMode | str = GcMode.STEP,
    workers: int = 1,
) -> Lts:
    """
    Breadth-first exploration of observable steps.

    Stops early and sets truncated once max_states distinct states have
    been found.  With workers > 1 each BFS level is expanded on a thread
    pool; results are merged in frontier order, so the outcome is the same
    as the sequential run.
    """
    gc_mode = GcMode(gc_mode)
    model = config.static.clock_model
    if model == ClockModel.LOGICAL and gc_mode != GcMode.OFF:
        log.debug("logical clock: garbage collection disabled")
        gc_mode = GcMode.OFF
    start = config if gc_mode == GcMode.OFF else gc(config)

    def expand(state: Configuration) -> List[Step]:
        return observable_steps(state, gc_mode=gc_mode)

    init_key = state_key(start)
    states: Dict[Hashable, Optional[Configuration]] = {init_key: start}
    transitions: List[Transition] = []
    seen_edges = set()
    frontier = [start]
    truncated = False
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier and not truncated:
            expanded = pool.map(expand, frontier) if pool else map(expand, frontier)
            next_frontier = []
            for state, steps in zip(frontier, expanded):
                source = state_key(state)
                for step in steps:
                    target = state_key(step.target)
                    if target not in states:
                        if len(states) >= max_states:
                            truncated = True
                            continue
                        states[target] = step.target
                        next_frontier.append(step.target)
                    edge = Transition(source, step.label, target)
                    if edge not in seen_edges:
                        seen_edges.add(edge)
                        transitions.append(edge)
            frontier = next_frontier
    finally:
        if pool:
            pool.shutdown()

    if truncated:
        log.warning(f"exploration truncated at {max_states} states")
    log.info(f"lts built: {len(states)} states, {len(transitions)} transitions")
    return Lts(states, init_key, transitions, truncated, model.value, gc_mode.value)
