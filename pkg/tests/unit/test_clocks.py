"""
Tests for clock models
"""

import random

import pytest

from pigraph.errors import ClockModelError
from pigraph.model.clocks import BOTTOM, CausalClock, ClockModel, LogicalClock, initial_clock
from pigraph.model.names import Name


def test_causal_init():
    """Only the bottom element, next indices start at one"""
    clock = CausalClock.init()
    assert clock.as_mapping() == {BOTTOM: frozenset()}
    assert clock.next_o() == 1
    assert clock.next_i() == 1


def test_causal_next_o_fills_gaps():
    """Smallest positive index not yet in the domain"""
    clock = CausalClock.from_mapping({1: [], 3: []})
    assert clock.next_o() == 2


def test_causal_ticks():
    """out adds an empty entry, in adds the fresh input everywhere"""
    out = CausalClock.init().tick_out()
    assert out.as_mapping() == {BOTTOM: frozenset(), 1: frozenset()}
    both = out.tick_in()
    assert both.as_mapping() == {BOTTOM: frozenset({1}), 1: frozenset({1})}


def test_causal_tick_out_keeps_existing_entries():
    """Random tick sequences: in adds one index to all entries, out touches nothing old"""
    rng = random.Random(3)
    clock = CausalClock.init()
    for _ in range(40):
        before = clock.as_mapping()
        if rng.random() < 0.5:
            fresh = clock.next_i()
            clock = clock.tick_in()
            assert all(clock.as_mapping()[k] == v | {fresh} for k, v in before.items())
        else:
            clock = clock.tick_out()
            after = clock.as_mapping()
            assert all(after[k] == v for k, v in before.items())
            assert len(after) == len(before) + 1


def test_causal_precedes():
    """An input depends on the outputs present when it was created"""
    clock = CausalClock.init().tick_out().tick_in()
    assert clock.precedes(Name.fresh_out(1), Name.fresh_in(1))
    assert not CausalClock.init().precedes(Name.fresh_out(1), Name.fresh_in(1))
    later = CausalClock.init().tick_in().tick_out()
    assert not later.precedes(Name.fresh_out(1), Name.fresh_in(1))


def test_causal_names():
    """Names are the non-bottom domain plus every input"""
    clock = CausalClock.init().tick_out().tick_in()
    assert clock.names_of() == {Name.fresh_out(1), Name.fresh_in(1)}
    assert CausalClock.init().names_of() == frozenset()
    assert CausalClock.from_mapping({2: []}).names_of() == {Name.fresh_out(2)}


def test_causal_validation():
    """Bottom must be present, entries sorted"""
    with pytest.raises(ValueError):
        CausalClock(((1, frozenset()),))
    with pytest.raises(ValueError):
        CausalClock(((0, frozenset()), (2, frozenset()), (1, frozenset())))


def test_causal_trimmed_and_render():
    """Trimming keeps bottom and intersects input sets"""
    clock = CausalClock.from_mapping({0: [1, 2], 1: [1, 2], 2: [2]})
    trimmed = clock.trimmed([2], [2])
    assert trimmed.as_mapping() == {BOTTOM: frozenset({2}), 2: frozenset({2})}
    assert trimmed.render() == "<bot->{2?} 2!->{2?}>"
    assert trimmed.to_builtins() == [{"out": "⊥", "ins": ["2?"]}, {"out": "2!", "ins": ["2?"]}]


def test_logical_clock():
    """Both ticks increment, precedence is index order"""
    clock = LogicalClock(3)
    assert clock.next_o() == 4
    assert clock.next_i() == 4
    assert LogicalClock.init().tick_in() == LogicalClock(1)
    assert clock.precedes(Name.fresh_out(1), Name.fresh_in(2))
    assert not clock.precedes(Name.fresh_out(2), Name.fresh_in(1))
    assert clock.render() == "3"


def test_logical_clock_has_no_names():
    """names_of is only defined for causal clocks"""
    with pytest.raises(ClockModelError):
        LogicalClock(2).names_of()


def test_initial_clock():
    """Models are selected by value"""
    assert isinstance(initial_clock("logical"), LogicalClock)
    assert isinstance(initial_clock(ClockModel.CAUSAL), CausalClock)
    with pytest.raises(ClockModelError):
        initial_clock("vector")
