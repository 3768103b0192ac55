"""pigraph command line: check, trace, bound, lts, bisim."""

import argparse
import logging
import random
import sys
from typing import List, Optional

from dotenv import load_dotenv
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from pigraph import __version__
from pigraph.analysis.bisim import bisimilar
from pigraph.analysis.export import export_dot, export_json
from pigraph.analysis.lts import Lts, build_lts
from pigraph.config import ExportFormat, RunConfig
from pigraph.errors import PiGraphError
from pigraph.model.clocks import ClockModel
from pigraph.semantics.engine import observable_steps
from pigraph.semantics.gc import GcMode, gc
from pigraph.semantics.invariants import check_invariants
from pigraph.syntax.compiler import compile_graph
from pigraph.syntax.graph import Configuration
from pigraph.syntax.parser import parse
from pigraph.syntax.render import render
from pigraph.utils import read_text, write_text

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DIFFERENT = 1
EXIT_ERROR = 2


def _out(console: Console, text: str) -> None:
    console.print(text, markup=False, highlight=False, soft_wrap=True)


def _load(path: str, clock_model: ClockModel = ClockModel.CAUSAL) -> Configuration:
    return compile_graph(parse(read_text(path)), clock_model)


def cmd_check(path: str, console: Console) -> int:
    config = _load(path)
    static = config.static
    _out(console, f"ok: {len(static.places)} places, {len(static.boxes)} boxes, eps-bound {static.eps_bound}")
    return EXIT_OK


def cmd_bound(path: str, console: Console) -> int:
    _out(console, str(_load(path).static.eps_bound))
    return EXIT_OK


def cmd_trace(path: str, run: RunConfig, console: Console) -> int:
    state = _load(path, run.clock_model)
    if run.gc_mode != GcMode.OFF:
        state = gc(state)
    rng = random.Random(run.seed)
    _out(console, render(state))
    for _ in range(run.steps):
        steps = observable_steps(state, gc_mode=run.gc_mode)
        if not steps:
            _out(console, "blocked")
            break
        step = rng.choice(steps)
        state = step.target
        _out(console, f"{step.label.render()}  {render(state)}")
    return EXIT_OK


def _verify(lts: Lts, run: RunConfig) -> List[str]:
    fingerprint = lts.states[lts.initial].static.fingerprint()
    garbage_free = run.clock_model == ClockModel.CAUSAL and run.gc_mode != GcMode.OFF
    problems = []
    ids = lts.state_ids()
    for key, config in lts.states.items():
        problems += [f"{ids[key]}: {p}" for p in check_invariants(config, fingerprint, garbage_free)]
    return problems


def _print_stats(lts: Lts, console: Console) -> None:
    table = Table(title="lts")
    table.add_column("metric")
    table.add_column("value")
    for metric, value in lts.stats().items():
        table.add_row(metric, escape(str(value)))
    console.print(table)


def cmd_lts(path: str, run: RunConfig, console: Console, verbose: bool = False) -> int:
    lts = build_lts(_load(path, run.clock_model), run.max_states, run.gc_mode, run.workers)
    text = export_json(lts) if run.format == ExportFormat.JSON else export_dot(lts)
    if run.output:
        write_text(run.output, text)
    else:
        console.file.write(text)
    _out(console, f"states={len(lts.states)} transitions={len(lts.transitions)} "
                  f"truncated={str(lts.truncated).lower()}")
    if verbose:
        _print_stats(lts, console)
    if run.verify:
        problems = _verify(lts, run)
        for p in problems:
            _out(console, f"violation {p}")
        _out(console, f"invariants: {len(problems)} violations")
        if problems:
            return EXIT_DIFFERENT
    return EXIT_OK


def cmd_bisim(left: str, right: str, run: RunConfig, console: Console) -> int:
    a = build_lts(_load(left, run.clock_model), run.max_states, run.gc_mode, run.workers)
    b = build_lts(_load(right, run.clock_model), run.max_states, run.gc_mode, run.workers)
    verdict = bisimilar(a, b)
    if verdict:
        _out(console, "bisimilar")
        return EXIT_OK
    _out(console, f"not bisimilar: {verdict.failing_side} cannot answer the last move")
    for step in verdict.witness:
        _out(console, step.render())
    return EXIT_DIFFERENT


def _parser() -> argparse.ArgumentParser:
    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--clock", dest="clock_model", choices=[m.value for m in ClockModel])
    run.add_argument("--gc", dest="gc_mode", choices=[m.value for m in GcMode])
    run.add_argument("--max-states", type=int)
    run.add_argument("--workers", type=int)
    run.add_argument("--config", help="YAML run configuration")

    parser = argparse.ArgumentParser(prog="pigraph", description="pi-graph models: semantics, LTS, bisimilarity")
    parser.add_argument("--version", action="version", version=f"pigraph {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and compile a model")
    p.add_argument("file")
    p = sub.add_parser("bound", help="print the static epsilon bound")
    p.add_argument("file")

    p = sub.add_parser("trace", parents=[run], help="replay observable transitions")
    p.add_argument("file")
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("lts", parents=[run], help="build and export the transition system")
    p.add_argument("file")
    p.add_argument("--format", choices=[f.value for f in ExportFormat])
    p.add_argument("-o", "--output")
    p.add_argument("--verify", action="store_true", default=None)

    p = sub.add_parser("bisim", parents=[run], help="decide strong bisimilarity of two models")
    p.add_argument("left")
    p.add_argument("right")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    keys = ("clock_model", "gc_mode", "max_states", "workers", "steps", "seed", "format", "output", "verify")
    overrides = {k: getattr(args, k, None) for k in keys}
    return RunConfig.load(getattr(args, "config", None), **overrides)


def main(argv: Optional[List[str]] = None, console: Optional[Console] = None) -> int:
    load_dotenv()
    args = _parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    console = console or Console(soft_wrap=True)
    errors = Console(stderr=True)
    try:
        if args.command == "check":
            return cmd_check(args.file, console)
        if args.command == "bound":
            return cmd_bound(args.file, console)
        run = _run_config(args)
        if args.command == "trace":
            return cmd_trace(args.file, run, console)
        if args.command == "lts":
            return cmd_lts(args.file, run, console, args.verbose)
        return cmd_bisim(args.left, args.right, run, console)
    except (PiGraphError, OSError, ValueError) as e:
        errors.print(f"[red]error:[/] {escape(str(e))}")
        log.debug("command failed", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
