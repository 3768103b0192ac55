"""
One-step semantics of compiled graphs.

raw_steps enumerates every rule instance enabled in a configuration;
observable_steps abstracts away epsilon moves the way the transition
system needs them.  Both are pure: configurations in, steps out.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import FrozenSet, Iterator, List, Optional, Tuple

from pigraph.errors import EpsilonBoundExceeded
from pigraph.model.names import Name, compatible, refine
from pigraph.semantics.gc import GcMode, gc
from pigraph.semantics.labels import EPSILON, TAU, Label, Step
from pigraph.syntax.graph import Configuration, Place, PlaceType

log = logging.getLogger(__name__)

Scope = Optional[FrozenSet[int]]


def _in_scope(pid: int, scope: Scope) -> bool:
    return scope is None or pid in scope


def _next(place: Place) -> int:
    return place.ctl[0]


def _step(label: Label, target: Configuration, rule: str, gc_mode: GcMode) -> Step:
    if gc_mode == GcMode.STEP:
        target = gc(target)
    return Step(label, target, rule)


def _output(config: Configuration, place: Place, gc_mode: GcMode) -> Iterator[Step]:
    chan = config.inst[place.out_link]
    datum = config.inst[place.data]
    if not chan.is_public:
        return
    marking = config.move([place.id], [_next(place)])
    if datum.is_public:
        yield _step(Label.out(chan, datum), config.evolve(marking=marking), "out", gc_mode)
        return
    fresh = Name.fresh_out(config.clock.next_o())
    target = config.evolve(
        clock=config.clock.tick_out(),
        marking=marking,
        inst=config.instantiate(place.data, fresh),
    )
    yield _step(Label.out(chan, fresh), target, "o-fresh", gc_mode)


def _input(config: Configuration, place: Place, gc_mode: GcMode) -> Iterator[Step]:
    chan = config.inst[place.in_link]
    if not chan.is_public:
        return
    fresh = Name.fresh_in(config.clock.next_i())
    target = config.evolve(
        clock=config.clock.tick_in(),
        marking=config.move([place.id], [_next(place)]),
        inst=config.instantiate(place.data, fresh),
    )
    yield _step(Label.inp(chan, fresh), target, "i-fresh", gc_mode)


def _match(config: Configuration, place: Place, gc_mode: GcMode) -> Iterator[Step]:
    left = config.inst[place.data]
    right = config.inst[place.data2]
    if not compatible(config.gamma, config.clock, left, right):
        log.debug(f"match blocked at place {place.id}: {left} vs {right} under {config.gamma.render()}")
        return
    target = config.evolve(
        gamma=refine(config.gamma, config.clock, left, right),
        marking=config.move([place.id], [_next(place)]),
    )
    yield _step(EPSILON, target, "match", gc_mode)


def _terminate(config: Configuration, place: Place, gc_mode: GcMode) -> Iterator[Step]:
    static = config.static
    owner = static.place(place.closes)
    if owner.type == PlaceType.ITER:
        inst = list(config.inst)
        for box in static.iterators[owner.iterator].resets:
            inst[box] = static.boxes[box].name
        target = config.evolve(marking=config.move([place.id], [owner.id]), inst=tuple(inst))
        yield _step(EPSILON, target, "iter0", gc_mode)
    elif owner.type == PlaceType.SUM:
        yield _step(EPSILON, config.evolve(marking=config.move([place.id], [_next(place)])), "sum0", gc_mode)
    else:
        zeros = static.branch_zeros[owner.id]
        # fire once, from the first branch terminator, when all of them hold a token
        if place.id != zeros[0] or not all(z in config.marking for z in zeros):
            return
        yield _step(EPSILON, config.evolve(marking=config.move(zeros, [_next(place)])), "par0", gc_mode)


def _sum(config: Configuration, place: Place, gc_mode: GcMode, bound: int) -> Iterator[Step]:
    static = config.static
    for initial, region, zero in zip(place.ctl, static.regions[place.id], static.branch_zeros[place.id]):
        chosen = config.evolve(marking=config.move([place.id], [initial]))
        for step in _observations(chosen, bound, gc_mode, region - {zero}):
            yield Step(step.label, step.target, "sum")


def _syncs(config: Configuration, gc_mode: GcMode, scope: Scope) -> Iterator[Step]:
    static = config.static
    marked = [static.place(pid) for pid in sorted(config.marking) if _in_scope(pid, scope)]
    outs = [p for p in marked if p.type == PlaceType.OUT]
    ins = [p for p in marked if p.type == PlaceType.IN]
    for o in outs:
        for i in ins:
            if not config.is_default(i.data):
                continue
            a = config.inst[o.out_link]
            b = config.inst[i.in_link]
            if not compatible(config.gamma, config.clock, a, b):
                continue
            target = config.evolve(
                gamma=refine(config.gamma, config.clock, a, b),
                marking=config.move([o.id, i.id], [_next(o), _next(i)]),
                inst=config.instantiate(i.data, config.inst[o.data]),
            )
            yield _step(TAU, target, "sync", gc_mode)


def raw_steps(
    config: Configuration,
    gc_mode: GcMode = GcMode.OFF,
    scope: Scope = None,
    bound: Optional[int] = None,
) -> List[Step]:
    """
    Every one-step derivation of config, epsilon steps included.

    scope restricts the redexes considered to a set of places (used by
    the sum lookahead); bound caps epsilon runs inside such lookaheads.
    """
    static = config.static
    bound = static.eps_bound if bound is None else bound
    steps: List[Step] = []
    for pid in sorted(config.marking):
        if not _in_scope(pid, scope):
            continue
        place = static.place(pid)
        ptype = place.type
        if ptype == PlaceType.ITER:
            steps.append(_step(EPSILON, config.evolve(marking=config.move([pid], [_next(place)])), "iter", gc_mode))
        elif ptype == PlaceType.TAU:
            steps.append(_step(TAU, config.evolve(marking=config.move([pid], [_next(place)])), "silent", gc_mode))
        elif ptype == PlaceType.OUT:
            steps.extend(_output(config, place, gc_mode))
        elif ptype == PlaceType.IN:
            steps.extend(_input(config, place, gc_mode))
        elif ptype == PlaceType.MATCH:
            steps.extend(_match(config, place, gc_mode))
        elif ptype == PlaceType.PAR:
            steps.append(_step(EPSILON, config.evolve(marking=config.move([pid], place.ctl)), "par", gc_mode))
        elif ptype == PlaceType.SUM:
            steps.extend(_sum(config, place, gc_mode, bound))
        else:
            steps.extend(_terminate(config, place, gc_mode))
    steps.extend(_syncs(config, gc_mode, scope))
    return steps


def _explore(
    config: Configuration, bound: int, gc_mode: GcMode, scope: Scope,
) -> Tuple[List[Configuration], List[Step]]:
    seen = {config}
    closure = [config]
    visible: List[Step] = []
    queue = deque([(config, 0)])
    while queue:
        state, depth = queue.popleft()
        for step in raw_steps(state, gc_mode, scope, bound):
            if not step.label.is_epsilon:
                visible.append(step)
                continue
            if step.target in seen:
                continue
            if depth + 1 > bound:
                raise EpsilonBoundExceeded(bound)
            seen.add(step.target)
            closure.append(step.target)
            queue.append((step.target, depth + 1))
    return closure, _dedupe(visible)


def epsilon_closure(
    config: Configuration,
    bound: Optional[int] = None,
    gc_mode: GcMode = GcMode.STEP,
) -> List[Configuration]:
    """States reachable through epsilon steps only, in BFS order, config first."""
    bound = config.static.eps_bound if bound is None else bound
    return _explore(config, bound, gc_mode, None)[0]


def _observations(config: Configuration, bound: int, gc_mode: GcMode, scope: Scope) -> List[Step]:
    return _explore(config, bound, gc_mode, scope)[1]


def observable_steps(
    config: Configuration,
    bound: Optional[int] = None,
    gc_mode: GcMode = GcMode.STEP,
) -> List[Step]:
    """Steps of the form eps* alpha with alpha not eps; targets are garbage collected unless gc is off."""
    bound = config.static.eps_bound if bound is None else bound
    steps = _observations(config, bound, gc_mode, None)
    if gc_mode == GcMode.OBS:
        steps = _dedupe(Step(s.label, gc(s.target), s.rule) for s in steps)
    log.debug(f"{len(steps)} observable steps")
    return steps


def _dedupe(steps) -> List[Step]:
    out, seen = [], set()
    for step in steps:
        key = (step.label, step.target)
        if key not in seen:
            seen.add(key)
            out.append(step)
    return out
