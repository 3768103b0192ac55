"""Compilation of a GraphAst into its initial configuration."""

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, List, Optional, Tuple

from pigraph.model.clocks import ClockModel, initial_clock
from pigraph.model.names import EMPTY_PARTITION, Name
from pigraph.semantics.bounds import epsilon_bound
from pigraph.syntax.ast import GraphAst, Input, Match, Output, Par, ProcessAst, Silent, Sum
from pigraph.syntax.graph import Box, Configuration, IteratorInfo, Place, PlaceType, StaticGraph
from pigraph.syntax.parser import validate

log = logging.getLogger(__name__)


class _GraphBuilder:
    def __init__(self):
        self.places: List[Dict] = []
        self.boxes: List[Box] = []
        self.scopes: List[Dict[str, int]] = []
        self.globals: Dict[str, int] = {}
        self.regions: Dict[int, Tuple[FrozenSet[int], ...]] = {}
        self.branch_zeros: Dict[int, Tuple[int, ...]] = {}

    def new_place(self, ptype: PlaceType, iterator: int, **links) -> int:
        pid = len(self.places)
        self.places.append({"id": pid, "type": ptype, "iterator": iterator, "ctl": (), **links})
        return pid

    def new_box(self, name: Name, iterator: Optional[int] = None) -> int:
        bid = len(self.boxes)
        self.boxes.append(Box(bid, name, iterator))
        return bid

    def lookup(self, ident: str, iterator: int) -> int:
        scope = self.scopes[iterator]
        return scope[ident] if ident in scope else self.globals[ident]

    def prefix(self, p, iterator: int) -> int:
        if isinstance(p, Silent):
            return self.new_place(PlaceType.TAU, iterator)
        if isinstance(p, Output):
            return self.new_place(PlaceType.OUT, iterator,
                                  out_link=self.lookup(p.chan, iterator),
                                  data=self.lookup(p.datum, iterator))
        if isinstance(p, Input):
            return self.new_place(PlaceType.IN, iterator,
                                  in_link=self.lookup(p.chan, iterator),
                                  data=self.lookup(p.binder, iterator))
        if isinstance(p, Match):
            return self.new_place(PlaceType.MATCH, iterator,
                                  data=self.lookup(p.left, iterator),
                                  data2=self.lookup(p.right, iterator))
        ptype = PlaceType.SUM if isinstance(p, Sum) else PlaceType.PAR
        head = self.new_place(ptype, iterator)
        initials, zeros, regions = [], [], []
        for branch in p.branches:
            start = len(self.places)
            initial, zero = self.process(branch, iterator, closes=head)
            regions.append(frozenset(range(start, len(self.places))))
            initials.append(initial)
            zeros.append(zero)
        self.places[head]["ctl"] = tuple(initials)
        self.regions[head] = tuple(regions)
        self.branch_zeros[head] = tuple(zeros)
        return head

    def process(self, proc: ProcessAst, iterator: int, closes: int) -> Tuple[int, int]:
        heads = [self.prefix(p, iterator) for p in proc.prefixes]
        zero = self.new_place(PlaceType.ZERO, iterator, closes=closes)
        chain = heads + [zero]
        for here, nxt in zip(heads, chain[1:]):
            place = self.places[here]
            if place["type"] in (PlaceType.SUM, PlaceType.PAR):
                place["cont"] = nxt
                for z in self.branch_zeros[here]:
                    self.places[z]["ctl"] = (nxt,)
            else:
                place["ctl"] = (nxt,)
        return chain[0], zero


def compile_graph(ast: GraphAst, clock_model: ClockModel | str = ClockModel.CAUSAL) -> Configuration:
    validate(ast)
    b = _GraphBuilder()
    for ident in ast.free_names:
        b.globals[ident] = b.new_box(Name.free(ident))
    for ident in ast.restrictions:
        b.globals[ident] = b.new_box(Name.restriction(ident))

    iterators = []
    for index, it in enumerate(ast.iterators):
        scope = {}
        for ident in it.privates:
            scope[ident] = b.new_box(Name.private(ident), index)
        for ident in it.binders:
            scope[ident] = b.new_box(Name.binder(ident), index)
        b.scopes.append(scope)

        star = b.new_place(PlaceType.ITER, index)
        initial, zero = b.process(it.body, index, closes=star)
        b.places[star]["ctl"] = (initial,)
        b.places[zero]["ctl"] = (star,)
        iterators.append(IteratorInfo(index, star, zero, tuple(sorted(scope.values()))))

    static = StaticGraph(
        places=tuple(Place(**p) for p in b.places),
        boxes=tuple(b.boxes),
        iterators=tuple(iterators),
        regions=b.regions,
        branch_zeros=b.branch_zeros,
        eps_bound=epsilon_bound(ast),
        clock_model=ClockModel(clock_model),
    )
    config = Configuration(
        static=static,
        clock=initial_clock(clock_model),
        gamma=EMPTY_PARTITION,
        marking=frozenset(it.star for it in iterators),
        inst=static.box_names(),
    )
    log.info(f"compiled model: {len(static.places)} places, {len(static.boxes)} boxes, "
             f"eps-bound {static.eps_bound}")
    return config
