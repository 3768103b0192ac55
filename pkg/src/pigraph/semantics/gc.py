"""
Garbage collection of unused fresh names.

Only meaningful under causal clocks: partition classes lose the fresh
inputs that are no longer instantiated, and clock entries survive only
while some box or some stored class still refers to them.
"""

from __future__ import annotations

import logging
from enum import Enum

from pigraph.model.clocks import CausalClock
from pigraph.model.names import NameKind, Partition, partition_of
from pigraph.syntax.graph import Configuration

log = logging.getLogger(__name__)


class GcMode(str, Enum):
    STEP = "step"   # after every rule application
    OBS = "obs"     # on observable targets only
    OFF = "off"


def collect_partition(config: Configuration) -> Partition:
    cod = config.cod
    kept = []
    for cls in config.gamma.classes:
        kept.append({n for n in cls if n.kind in (NameKind.FREE, NameKind.FRESH_OUT) or n in cod})
    return partition_of(kept)


def gc(config: Configuration) -> Configuration:
    clock = config.clock
    if not isinstance(clock, CausalClock):
        return config

    gamma = collect_partition(config)
    cod = config.cod
    referenced = {n.index for n in cod | gamma.members() if n.kind == NameKind.FRESH_OUT}
    keep = [k for k in clock.outputs() if k in referenced]
    live = {n.index for n in cod if n.kind == NameKind.FRESH_IN}
    trimmed = clock.trimmed(keep, live)

    if trimmed == clock and gamma == config.gamma:
        return config
    log.debug(f"gc: clock {clock.render()} -> {trimmed.render()}, gamma {config.gamma.render()} -> {gamma.render()}")
    return config.evolve(clock=trimmed, gamma=gamma)
