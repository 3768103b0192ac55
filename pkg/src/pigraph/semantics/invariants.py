"""
Runtime checks of the properties every reachable configuration must satisfy.

Each checker returns a list of human readable violations; an empty list
means the configuration passed.
"""

from __future__ import annotations

import logging
from typing import Callable, List, Optional

from pigraph.model.clocks import BOTTOM, CausalClock
from pigraph.model.names import Name, NameKind, Partition
from pigraph.semantics.engine import raw_steps
from pigraph.semantics.gc import GcMode
from pigraph.syntax.graph import Configuration

log = logging.getLogger(__name__)


def check_freshness(config: Configuration) -> List[str]:
    problems = []
    out = Name.fresh_out(config.clock.next_o())
    inp = Name.fresh_in(config.clock.next_i())
    for name in (out, inp):
        if name in config.cod:
            problems.append(f"next fresh name {name} is already instantiated")
    return problems


def check_partition(gamma: Partition) -> List[str]:
    problems = []
    for cls in gamma.sorted_classes():
        outs = [n for n in cls if n.kind == NameKind.FRESH_OUT]
        if not outs:
            continue
        others = [n for n in cls if n.kind != NameKind.FRESH_IN]
        if len(others) > 1:
            rendered = ",".join(n.render() for n in cls)
            problems.append(f"class {{{rendered}}} mixes a fresh output with non-input names")
    return problems


def check_garbage_free(config: Configuration) -> List[str]:
    clock = config.clock
    if not isinstance(clock, CausalClock):
        return []
    cod = config.cod
    expected_dom = {BOTTOM}
    expected_dom |= {n.index for n in cod if n.kind == NameKind.FRESH_OUT}
    expected_dom |= {n.index for n in config.gamma.members() if n.kind == NameKind.FRESH_OUT}
    expected_ins = {n.index for n in cod if n.kind == NameKind.FRESH_IN}

    problems = []
    dom = set(clock.as_mapping())
    if dom != expected_dom:
        problems.append(f"clock domain {sorted(dom)} differs from referenced outputs {sorted(expected_dom)}")
    if set(clock.inputs()) != expected_ins:
        problems.append(f"clock inputs {sorted(clock.inputs())} differ from instantiated inputs {sorted(expected_ins)}")
    return problems


def check_clock_bounds(config: Configuration) -> List[str]:
    clock = config.clock
    if not isinstance(clock, CausalClock):
        return []
    limit = len(config.static.boxes)
    problems = []
    if any(i > limit for i in clock.inputs()):
        problems.append(f"clock input index above {limit}: {clock.render()}")
    if any(k > limit for k in clock.outputs()):
        problems.append(f"clock output index above {limit}: {clock.render()}")
    return problems


def check_static(config: Configuration, fingerprint: tuple) -> List[str]:
    if config.static.fingerprint() != fingerprint:
        return ["static graph changed"]
    return []


def check_invariants(
    config: Configuration,
    fingerprint: Optional[tuple] = None,
    garbage_free: bool = True,
) -> List[str]:
    """Run every applicable checker; garbage_free enables the gc-normal-form equalities."""
    checkers: List[Callable[[], List[str]]] = [
        lambda: check_freshness(config),
        lambda: check_partition(config.gamma),
        lambda: check_clock_bounds(config),
    ]
    if garbage_free:
        checkers.append(lambda: check_garbage_free(config))
    if fingerprint is not None:
        checkers.append(lambda: check_static(config, fingerprint))
    problems = [p for check in checkers for p in check()]
    if problems:
        log.debug(f"{len(problems)} invariant violations: {problems}")
    return problems


def longest_epsilon_run(config: Configuration, gc_mode: GcMode = GcMode.STEP) -> int:
    """Length of the longest cycle-free sequence of epsilon steps leaving config."""
    cap = config.static.eps_bound + 1

    def walk(state: Configuration, path: frozenset) -> int:
        best = 0
        for step in raw_steps(state, gc_mode):
            if not step.label.is_epsilon or step.target in path:
                continue
            best = max(best, 1 + walk(step.target, path | {step.target}))
            if best >= cap:
                break
        return best

    return walk(config, frozenset((config,)))
