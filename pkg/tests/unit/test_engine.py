"""
Tests for the rule engine
"""

import pytest

from pigraph.errors import EpsilonBoundExceeded
from pigraph.model.clocks import CausalClock, LogicalClock
from pigraph.model.names import EMPTY_PARTITION, Name, partition_of
from pigraph.semantics.engine import epsilon_closure, observable_steps, raw_steps
from pigraph.semantics.gc import GcMode
from pigraph.semantics.labels import EPSILON, TAU, Label

C = Name.free("c")


def _only(steps):
    assert len(steps) == 1, [(s.rule, s.label.render()) for s in steps]
    return steps[0]


def _advance(config, *labels):
    """Follow observable steps with the given rendered labels"""
    for label in labels:
        config = _only([s for s in observable_steps(config) if s.label.render() == label]).target
    return config


def test_iter_then_fresh_output(compiled):
    """The star place opens the body, then the private datum is extruded"""
    config = compiled("generator", "logical")
    opened = _only(raw_steps(config))
    assert opened.label == EPSILON
    assert opened.rule == "iter"
    out = _only(raw_steps(opened.target))
    assert out.rule == "o-fresh"
    assert out.label == Label.out(C, Name.fresh_out(1))
    assert out.target.clock == LogicalClock(1)
    assert out.target.inst[1] == Name.fresh_out(1)


def test_sync_on_private_channel(compiled):
    """A private channel name passes over a private channel"""
    config = compiled("name_passing", "logical")
    config = _only(raw_steps(config)).target
    config = _only(raw_steps(config)).target
    step = _only(raw_steps(config))
    assert step.rule == "sync"
    assert step.label == TAU
    assert step.target.gamma == EMPTY_PARTITION
    boxes = {b.name: b.id for b in config.static.boxes}
    assert step.target.inst[boxes[Name.binder("x")]] == Name.private("d")
    assert step.target.clock == config.clock


def test_second_sync_uses_received_channel(compiled):
    """After the first exchange the binder serves as a channel"""
    config = compiled("name_passing", "logical")
    first = _only(observable_steps(config))
    second = _only(observable_steps(first.target))
    assert second.label == TAU
    boxes = {b.name: b.id for b in config.static.boxes}
    assert second.target.inst[boxes[Name.binder("y")]] == Name.free("m")


def test_match_refines_partition(compiled):
    """Extruded 1! may equal the later input 2?"""
    config = _advance(compiled("extrude_then_match", "logical"), "c!<1!>", "d?(2?)")
    assert config.clock == LogicalClock(2)
    step = _only(raw_steps(config))
    assert step.rule == "match"
    assert step.target.gamma == partition_of([[Name.fresh_out(1), Name.fresh_in(2)]])


def test_failed_match_blocks(compiled):
    """2! cannot equal the earlier input 1?"""
    config = _advance(compiled("input_then_match", "logical"), "d?(1?)", "c!<2!>")
    assert raw_steps(config) == []
    assert observable_steps(config) == []


def test_fresh_input_overwrites_and_blocks_sync(compile_source):
    """A second input rebinds; sync needs the binder at its default"""
    config = compile_source(
        "free(c) restr() *[ priv() bind(x) par{ c?(x).c?(x).0 || c!<c>.0 }.0 ]"
    )
    after_first = _advance(config, "c?(1?)")
    rules = sorted(s.rule for s in raw_steps(after_first))
    assert "sync" not in rules
    inp = _only([s for s in raw_steps(after_first) if s.rule == "i-fresh"])
    assert inp.label == Label.inp(C, Name.fresh_in(2))
    assert Name.fresh_in(2) in inp.target.inst


def test_sync_on_public_channel(compile_source):
    """Free channels synchronise as well as interact with the environment"""
    config = compile_source("free(c) restr() *[ priv() bind(x) c?(x).0 ] *[ priv() bind() c!<c>.0 ]")
    labels = {s.label.render() for s in observable_steps(config)}
    assert labels == {"c!<c>", "c?(1?)", "tau"}


def test_private_channel_cannot_reach_environment(compile_source):
    """Outputs on private channels only fire through sync"""
    config = compile_source("free() restr() *[ priv(p) bind() p!<p>.0 ]")
    assert observable_steps(config) == []


def test_par_terminates_when_all_branches_do(compile_source):
    """par0 needs every branch terminator marked"""
    config = compile_source("free(a) restr() *[ priv() bind() par{ a!<a>.0 || tau.0 }.0 ]", "logical")
    config = _only(raw_steps(config)).target
    config = _only(raw_steps(config)).target
    assert sorted(s.rule for s in raw_steps(config)) == ["out", "silent"]
    config = _only([s for s in raw_steps(config) if s.rule == "out"]).target
    assert [s.rule for s in raw_steps(config)] == ["silent"]
    config = _only(raw_steps(config)).target
    assert [s.rule for s in raw_steps(config)] == ["par0"]


def test_iter0_resets_private_boxes(compiled):
    """Looping back restores default instantiations"""
    config = _advance(compiled("generator"), "c!<1!>")
    step = _only(raw_steps(config, GcMode.STEP))
    assert step.rule == "iter0"
    assert step.target.inst == config.static.box_names()
    assert step.target.clock == CausalClock.init()


def test_sum_commits_one_branch(compiled):
    """Each branch contributes its first observable move"""
    steps = observable_steps(compiled("choice"))
    assert sorted(s.label.render() for s in steps) == ["a!<b>", "tau"]
    assert {s.rule for s in steps} == {"sum"}


def test_sum_lookahead_stays_inside_the_branch(compile_source):
    """No synchronisation between a sum branch and an outside process"""
    config = compile_source(
        "free() restr(k) *[ priv() bind(x) sum{ k?(x).0 + tau.0 }.0 ] *[ priv() bind() k!<k>.0 ]"
    )
    steps = observable_steps(config)
    assert {(s.rule, s.label.render()) for s in steps} == {("sum", "tau")}


def test_sum_lookahead_allows_sync_within_branch(compile_source):
    """Both ends of the exchange live in the chosen branch"""
    config = compile_source(
        "free() restr(k) *[ priv() bind(x) sum{ par{ k?(x).0 || k!<k>.0 }.0 + tau.0 }.0 ]"
    )
    steps = observable_steps(config)
    assert len(steps) == 2
    assert all(s.label == TAU and s.rule == "sum" for s in steps)


def test_causal_generator_loops(compiled):
    """The same index is reused forever"""
    post = _only(observable_steps(compiled("generator"))).target
    again = _only(observable_steps(post))
    assert again.label == Label.out(C, Name.fresh_out(1))
    assert again.target == post


def test_logical_generator_never_reuses(compiled):
    """Every round extrudes a new index"""
    config = compiled("generator", "logical")
    labels = []
    for _ in range(3):
        step = _only(observable_steps(config))
        labels.append(step.label.render())
        config = step.target
    assert labels == ["c!<1!>", "c!<2!>", "c!<3!>"]


def test_gc_off_grows_the_clock(compiled):
    """Without collection the causal clock keeps stale outputs"""
    config = compiled("generator")
    labels = []
    for _ in range(2):
        step = _only(observable_steps(config, gc_mode=GcMode.OFF))
        labels.append(step.label.render())
        config = step.target
    assert labels == ["c!<1!>", "c!<2!>"]


def test_epsilon_closure_bound(compiled):
    """Running past the static bound is an engine error"""
    config = compiled("generator")
    assert len(epsilon_closure(config)) == 2
    with pytest.raises(EpsilonBoundExceeded):
        observable_steps(config, bound=0)
