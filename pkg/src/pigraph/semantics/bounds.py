"""Static upper bound on the length of epsilon sequences."""

from __future__ import annotations

from pigraph.syntax.ast import GraphAst, IteratorAst, Match, Par, ProcessAst, Sum


def _prefix_bound(p) -> int:
    if isinstance(p, Match):
        return 1
    if isinstance(p, Par):
        return sum(process_bound(b) for b in p.branches) + 1
    if isinstance(p, Sum):
        return max(process_bound(b) for b in p.branches) + 1
    # silent, input and output prefixes never produce an epsilon step on their own
    return 0


def process_bound(proc: ProcessAst) -> int:
    return sum(_prefix_bound(p) for p in proc.prefixes)


def iterator_bound(it: IteratorAst) -> int:
    # entering and leaving the loop add one step each, and a run may span two rounds
    return 2 * process_bound(it.body) + 2


def epsilon_bound(ast: GraphAst) -> int:
    return sum(iterator_bound(it) for it in ast.iterators)
