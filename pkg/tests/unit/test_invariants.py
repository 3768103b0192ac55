"""
Invariant suite over the model corpus
"""

from pigraph.model.clocks import CausalClock
from pigraph.model.names import Name, partition_of
from pigraph.semantics.engine import raw_steps
from pigraph.semantics.gc import GcMode
from pigraph.semantics.invariants import (
    check_clock_bounds,
    check_freshness,
    check_garbage_free,
    check_invariants,
    check_partition,
    longest_epsilon_run,
)


def _has_epsilon_cycle(config) -> bool:
    on_path, done = set(), set()

    def visit(state) -> bool:
        on_path.add(state)
        for step in raw_steps(state, GcMode.STEP):
            if not step.label.is_epsilon or step.target in done:
                continue
            if step.target in on_path or visit(step.target):
                return True
        on_path.discard(state)
        done.add(state)
        return False

    return visit(config)


def test_reachable_states_satisfy_invariants(corpus_model, lts_of):
    """Freshness, partition shape, gc normal form, clock bounds and a fixed static part"""
    lts = lts_of(corpus_model)
    initial = lts.states[lts.initial]
    fingerprint = initial.static.fingerprint()
    for state in lts.states.values():
        assert check_invariants(state, fingerprint) == []


def test_raw_steps_preserve_freshness(corpus_model, lts_of):
    """Every single rule application keeps the next fresh names unused"""
    lts = lts_of(corpus_model)
    for state in lts.states.values():
        for mode in (GcMode.STEP, GcMode.OFF):
            for step in raw_steps(state, mode):
                assert check_freshness(step.target) == []
                assert check_partition(step.target.gamma) == []
                assert step.target.static is state.static


def test_epsilon_runs_respect_static_bound(corpus_model, lts_of):
    """Observed epsilon sequences never exceed the computed bound"""
    lts = lts_of(corpus_model)
    for state in lts.states.values():
        assert longest_epsilon_run(state) <= state.static.eps_bound


def test_no_epsilon_only_paths(corpus_model, lts_of):
    """Epsilon steps alone never loop"""
    lts = lts_of(corpus_model)
    for state in lts.states.values():
        assert not _has_epsilon_cycle(state)


def test_bare_zero_body_loops_silently(compile_source):
    """The one exception: an empty body cycles through epsilon steps"""
    config = compile_source("free() restr() *[ priv() bind() 0 ]")
    assert _has_epsilon_cycle(config)
    assert longest_epsilon_run(config) == 1


def test_checkers_report_violations(compiled):
    """Broken configurations are reported, not silently accepted"""
    config = compiled("extrude_then_match")
    boxes = {b.name: b.id for b in config.static.boxes}
    stale = config.evolve(inst=config.instantiate(boxes[Name.binder("x")], Name.fresh_in(1)))
    assert check_freshness(stale)
    assert check_garbage_free(stale)

    overflow = config.evolve(clock=CausalClock.from_mapping({9: []}))
    assert check_clock_bounds(overflow)

    mixed = partition_of([[Name.fresh_out(1), Name.free("c")]])
    assert check_partition(mixed)
