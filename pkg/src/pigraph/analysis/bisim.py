"""
Strong ground bisimilarity of two transition systems.

Partition refinement on the disjoint union: blocks are split by the set
of (label, successor block) pairs until nothing changes.  Every round is
kept so that a distinguishing trace can be read back from the point
where the two initial states were first separated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from pigraph.analysis.lts import Lts
from pigraph.errors import TruncatedInput

log = logging.getLogger(__name__)

LEFT = "L"
RIGHT = "R"

Succ = List[List[Tuple[str, int]]]


@dataclass(frozen=True)
class WitnessStep:
    side: str
    label: str

    def render(self) -> str:
        return f"{self.side}: {self.label}"


@dataclass(frozen=True)
class BisimVerdict:
    bisimilar: bool
    witness: Tuple[WitnessStep, ...] = ()
    failing_side: Optional[str] = None
    rounds: int = 0
    blocks: int = 0

    def __post_init__(self):
        if self.bisimilar and (self.witness or self.failing_side):
            raise ValueError("a positive verdict carries no witness")
        if not self.bisimilar and (not self.witness or self.failing_side not in (LEFT, RIGHT)):
            raise ValueError("a negative verdict needs a witness and a failing side")

    def __bool__(self) -> bool:
        return self.bisimilar


@dataclass
class _Union:
    succ: Succ = field(default_factory=list)
    left_initial: int = 0
    right_initial: int = 0
    sides: List[str] = field(default_factory=list)


def _disjoint_union(a: Lts, b: Lts) -> _Union:
    u = _Union()
    for side, lts in ((LEFT, a), (RIGHT, b)):
        offset = len(u.succ)
        index = {key: offset + i for i, key in enumerate(lts.states)}
        u.succ.extend([] for _ in lts.states)
        u.sides.extend(side for _ in lts.states)
        for t in lts.transitions:
            u.succ[index[t.source]].append((t.label.render(), index[t.target]))
        if side == LEFT:
            u.left_initial = index[lts.initial]
        else:
            u.right_initial = index[lts.initial]
    return u


def _refine(succ: Succ) -> List[List[int]]:
    """Block assignment after every round; round 0 puts everything together."""
    blocks = [0] * len(succ)
    history = [blocks]
    count = 1 if succ else 0
    while True:
        numbering: Dict[tuple, int] = {}
        refined = []
        for i, edges in enumerate(succ):
            signature = (blocks[i], frozenset((label, blocks[j]) for label, j in edges))
            refined.append(numbering.setdefault(signature, len(numbering)))
        if len(numbering) == count:
            return history
        blocks, count = refined, len(numbering)
        history.append(blocks)
        log.debug(f"refinement round {len(history) - 1}: {count} blocks")


def _separation(history: List[List[int]], x: int, y: int) -> Optional[int]:
    for r, blocks in enumerate(history):
        if blocks[x] != blocks[y]:
            return r
    return None


def _witness(u: _Union, history: List[List[int]]) -> Tuple[List[WitnessStep], str]:
    s, t = u.left_initial, u.right_initial
    r = _separation(history, s, t)
    steps: List[WitnessStep] = []
    while True:
        before = history[r - 1]
        best = None
        for mover, other in ((s, t), (t, s)):
            for label, m in sorted(u.succ[mover]):
                answers = [n for lbl, n in u.succ[other] if lbl == label]
                if any(before[n] == before[m] for n in answers):
                    continue
                if not answers:
                    cost, reply = 0, None
                else:
                    # the answer that resists separation longest
                    cost, reply = max((_separation(history, m, n), -n) for n in answers)
                    reply = -reply
                candidate = (cost, mover, label, m, reply)
                if best is None or cost < best[0]:
                    best = candidate
        cost, mover, label, m, reply = best
        steps.append(WitnessStep(u.sides[mover], label))
        if reply is None:
            return steps, RIGHT if u.sides[mover] == LEFT else LEFT
        s, t, r = m, reply, cost
        if u.sides[s] != LEFT:
            s, t = t, s


def bisimilar(a: Lts, b: Lts) -> BisimVerdict:
    for side, lts in ((LEFT, a), (RIGHT, b)):
        if lts.truncated:
            raise TruncatedInput(f"{side} transition system is truncated; the verdict would be unsound")
    u = _disjoint_union(a, b)
    history = _refine(u.succ)
    final = history[-1]
    rounds = len(history) - 1
    blocks = len(set(final))
    if final[u.left_initial] == final[u.right_initial]:
        log.info(f"bisimilar after {rounds} rounds, {blocks} blocks")
        return BisimVerdict(True, rounds=rounds, blocks=blocks)
    steps, failing = _witness(u, history)
    log.info(f"not bisimilar: {len(steps)}-step witness, {failing} side fails")
    return BisimVerdict(False, tuple(steps), failing, rounds, blocks)


def naive_bisimilar(a: Lts, b: Lts) -> bool:
    """Greatest fixed point by pair elimination; quadratic in states, meant for small systems."""
    u = _disjoint_union(a, b)
    n = len(u.succ)
    relation: Set[Tuple[int, int]] = {(x, y) for x in range(n) for y in range(n)}

    def simulated(x: int, y: int) -> bool:
        return all(
            any(lbl == label and (xp, yp) in relation for lbl, yp in u.succ[y])
            for label, xp in u.succ[x]
        )

    changed = True
    while changed:
        changed = False
        for x, y in sorted(relation):
            if not (simulated(x, y) and simulated(y, x)):
                relation.discard((x, y))
                changed = True
    return (u.left_initial, u.right_initial) in relation
