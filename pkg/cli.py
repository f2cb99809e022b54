#!/usr/bin/env python3
"""Command line interface for bootstrap-percolation-workbench."""

import argparse
import sys
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel

# Add src to Python path
sys.path.insert(0, str(Path(__file__).parent))

from src.config import RunConfig, load_constants, load_mapping, setup_logging
from src.droplet_events import FrameSpec
from src.dynamics import Orientation, closure, percolates
from src.exceptions import BootstrapPercolationError, PreconditionError
from src.hierarchy import build_hierarchy, check_good, check_satisfied, stats
from src.lattice import Config, Direction, Rect
from src.models import (
    ConfigDocument,
    EstimateRow,
    FrameSpecDocument,
    HierarchyDocument,
    read_document,
)
from src.montecarlo import (
    SUITE_ALIASES,
    SUITES,
    CrossingEvent,
    EventPredicate,
    GrowthEvent,
    InternallyFilled,
    NoDoubleGapEvent,
    TrialStream,
    Verdict,
    estimate_event,
    estimate_filled_conditioned,
    estimate_pc,
    sample_config,
    validate_inequality,
)
from src.numerics import (
    Constants,
    cor_key_bound,
    crossing_bounds,
    droplet_bound,
    g,
    key_big_bound,
    key_small_bound,
    leaving_diagonal_check,
    pc_lower_bound,
    seeds_bound,
    small_z_bounds,
    thin_rectangle_bound,
    two_big_rectangles_bound,
)
from src.utils import write_json, write_table

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

EVENTS = ["filled", "d1", "d2", "crossed", "no-double-gap"]
BOUND_KINDS = [
    "droplet",
    "seeds",
    "crossing",
    "cor-key",
    "key-small",
    "key-big",
    "leaving-diagonal",
    "pc",
    "thin",
    "two-big",
]
VALIDATION_COLUMNS = [
    "suite",
    "event",
    "params",
    "trials",
    "seed",
    "frequency",
    "ci_lo",
    "ci_hi",
    "bound",
    "verdict",
    "reason",
]

EXAMPLE_CONFIG = """# bootstrap-percolation-workbench configuration
# Every run stamps these settings on its output, so a result can be
# reproduced from the file alone.

# Probability and the constants of the droplet bounds.
# The bounds need "large enough" B, C, L1..L6 and "small enough" delta;
# these defaults are placeholders and every bound report says which of its
# preconditions held.
constants:
  p: 0.1
  B: 5.0
  C: 50.0
  delta: 0.05
  L1: 1000.0
  L2: 10000.0
  L3: 100000.0
  L4: 1000000.0
  L5: 10000000.0
  L6: 100000000.0

# Monte Carlo sampling
montecarlo:
  # Master seed; trial i of a run always uses substream i
  seed: 0
  trials: 1000
  # Worker processes (results do not depend on this)
  workers: 1
  # Draw budget when rejection-sampling internally filled droplets
  max_attempts: 100000
  # Bisection stops when the bracket on p_c is narrower than this
  pc_tolerance: 0.005

# Results
output:
  # Output file; results go to stdout when unset
  path: null
  # csv or json
  format: csv
  # Fill runtime_ms (re-runs are then no longer byte-identical)
  record_timings: false

# Logging (always on stderr)
logging:
  level: WARNING
  format: "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
  file:
    enabled: false
    path: logs/bperc.log
    max_size_mb: 10
    backup_count: 3
  console:
    enabled: true
    colorize: true
"""


def parse_rect(text: str) -> Rect:
    """``WxH`` for a rectangle at the origin, or ``x_lo,x_hi,y_lo,y_hi``."""
    try:
        if "x" in text:
            width, height = (int(part) for part in text.lower().split("x"))
            return Rect.from_dims(width, height)
        return Rect.from_list([int(part) for part in text.split(",")])
    except (ValueError, BootstrapPercolationError) as e:
        raise argparse.ArgumentTypeError(f"Invalid rectangle {text!r}: {e}") from e


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Invalid integer list {text!r}") from e


def create_parser() -> argparse.ArgumentParser:
    """Create the main argument parser."""
    parser = argparse.ArgumentParser(
        prog="bperc",
        description="bperc - two-neighbour bootstrap percolation workbench",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Generate example configuration
  %(prog)s init

  # Estimate the critical probability on two grid sizes
  %(prog)s --seed 7 --trials 200 pc --n 64,128

  # Probability that a 10x10 square is internally filled at p = 0.2
  %(prog)s event-prob --event filled --rect 10x10 --p 0.2

  # Evaluate the droplet bound as JSON
  %(prog)s bound --kind droplet --rect 40x60 --p 0.01

  # Build a hierarchy for a sampled filled droplet
  %(prog)s hier build --rect 8x8 --p 0.1

  # Run every validation suite
  %(prog)s validate --suite all
        """,
    )

    # Global arguments
    parser.add_argument(
        "-c",
        "--config",
        default="config/config.yaml",
        help="Path to configuration file (default: config/config.yaml)",
    )
    parser.add_argument(
        "-l",
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Set logging level (overrides config file setting)",
    )
    parser.add_argument("--seed", type=int, help="Override master seed")
    parser.add_argument("--trials", type=int, help="Override trials per estimate")
    parser.add_argument("--workers", type=int, help="Override worker processes")
    parser.add_argument("--constants", help="YAML or JSON file of constants")
    parser.add_argument("--out", help="Output file (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"], help="Output format")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Init command
    init_parser = subparsers.add_parser("init", help="Generate example configuration file")
    init_parser.add_argument(
        "-o",
        "--output",
        default="config/config.example.yaml",
        help="Output file path (default: config/config.example.yaml)",
    )
    init_parser.add_argument("--force", action="store_true", help="Overwrite existing file")

    # Sim command
    sim_parser = subparsers.add_parser("sim", help="Close a given or sampled configuration")
    sim_source = sim_parser.add_mutually_exclusive_group(required=True)
    sim_source.add_argument("--config-json", help="ConfigDocument JSON file")
    sim_source.add_argument("--rect", type=parse_rect, help="Sample on this rectangle")
    sim_parser.add_argument("--p", type=float, help="Infection probability for sampling")

    # Pc command
    pc_parser = subparsers.add_parser("pc", help="Estimate the critical probability")
    pc_parser.add_argument("--n", type=parse_int_list, required=True, help="Grid sizes, e.g. 64,128")
    pc_parser.add_argument("--tol", type=float, help="Bisection tolerance")

    # Event-prob command
    event_parser = subparsers.add_parser("event-prob", help="Estimate an event probability")
    event_parser.add_argument("--event", choices=EVENTS, required=True)
    event_parser.add_argument("--rect", type=parse_rect, help="Rectangle R")
    event_parser.add_argument("--p", type=float, help="Infection probability")
    event_parser.add_argument("--frame", help="FrameSpecDocument JSON file (d1, d2)")
    event_parser.add_argument(
        "--direction", default="+x", help="Crossing direction: +x, -x, +y, -y"
    )

    # Bound command
    bound_parser = subparsers.add_parser("bound", help="Evaluate a probability bound")
    bound_parser.add_argument("--kind", choices=BOUND_KINDS, required=True)
    bound_parser.add_argument("--rect", type=parse_rect, help="Rectangle R")
    bound_parser.add_argument("--p", type=float, help="Override p")
    bound_parser.add_argument("--frame", help="FrameSpecDocument JSON file (key bounds)")
    bound_parser.add_argument("--j", type=int, choices=[1, 2], default=1, help="Criticality")
    bound_parser.add_argument("--n", type=int, help="Grid size for --kind pc")
    bound_parser.add_argument("--direction", default="+x", help="Crossing direction")

    # G-table command
    g_parser = subparsers.add_parser("g-table", help="Tabulate g and its small-z bounds")
    g_parser.add_argument("--z-min", type=float, default=0.01)
    g_parser.add_argument("--z-max", type=float, default=5.0)
    g_parser.add_argument("--points", type=int, default=50)

    # Hier command
    hier_parser = subparsers.add_parser("hier", help="Build or check hierarchies")
    hier_sub = hier_parser.add_subparsers(dest="hier_command")
    build_parser = hier_sub.add_parser("build", help="Build a hierarchy for a filled droplet")
    build_source = build_parser.add_mutually_exclusive_group(required=True)
    build_source.add_argument("--config-json", help="ConfigDocument JSON file")
    build_source.add_argument("--rect", type=parse_rect, help="Sample a filled droplet on R")
    build_parser.add_argument("--p", type=float, help="Infection probability for sampling")
    check_parser = hier_sub.add_parser("check", help="Check a hierarchy against a config")
    check_parser.add_argument("--hierarchy", required=True, help="HierarchyDocument JSON file")
    check_parser.add_argument("--config-json", required=True, help="ConfigDocument JSON file")

    # Validate command
    validate_parser = subparsers.add_parser("validate", help="Run inequality validation suites")
    validate_parser.add_argument(
        "--suite",
        default="all",
        help=f"Suite to run: {', '.join(SUITES)}, all, or one of {', '.join(SUITE_ALIASES)}",
    )
    validate_parser.add_argument(
        "--params", help="YAML or JSON file of suite parameters (per suite name for all)"
    )

    return parser


def apply_overrides(args: Any, config: RunConfig) -> RunConfig:
    """Fold global flags into the loaded configuration."""
    updates: dict[str, Any] = {}
    if args.log_level:
        config.logging.level = args.log_level
    if args.constants:
        updates["constants"] = load_constants(args.constants, config.constants)
    montecarlo = config.montecarlo.model_copy(
        update={
            key: value
            for key, value in (
                ("seed", args.seed),
                ("trials", args.trials),
                ("workers", args.workers),
            )
            if value is not None
        }
    )
    output = config.output.model_copy(
        update={
            key: value
            for key, value in (("path", args.out), ("format", args.format))
            if value is not None
        }
    )
    updates |= {"montecarlo": montecarlo, "output": output}
    # model_copy skips validation; round-trip so overrides are checked
    return RunConfig.model_validate(config.model_copy(update=updates).model_dump())


def _constants(config: RunConfig, p: float | None) -> Constants:
    return config.constants.with_p(p) if p is not None else config.constants


def _require(value: Any, flag: str) -> Any:
    if value is None:
        raise PreconditionError(f"{flag} is required here")
    return value


def _emit_json(document: dict[str, Any], config: RunConfig) -> None:
    write_json(document, config.provenance(), config.output.path)


def _emit_rows(rows: list[dict[str, Any]], columns: list[str], config: RunConfig) -> None:
    write_table(rows, columns, config.provenance(), config.output.path, config.output.format)


def init_command(args: Any) -> int:
    """Generate example configuration file."""
    output_path = Path(args.output)

    if output_path.exists() and not args.force:
        print(
            f"[ERROR] File {output_path} already exists. Use --force to overwrite.",
            file=sys.stderr,
        )
        return EXIT_USAGE

    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(EXAMPLE_CONFIG)
    print(f"[OK] Example configuration written to {output_path}", file=sys.stderr)
    return EXIT_OK


def sim_command(args: Any, config: RunConfig) -> int:
    """Close a configuration and report whether it percolates."""
    if args.config_json:
        initial = read_document(args.config_json, ConfigDocument).to_domain()
    else:
        p = _require(args.p, "--p")
        initial = sample_config(p, args.rect, TrialStream(config.montecarlo.seed), 0)
    final = closure(initial)
    _emit_json(
        {
            "initial": ConfigDocument.from_domain(initial).model_dump(),
            "final": ConfigDocument.from_domain(final).model_dump(),
            "percolates": percolates(initial),
            "infected_initial": initial.count,
            "infected_final": final.count,
        },
        config,
    )
    return EXIT_OK


def pc_command(args: Any, config: RunConfig) -> int:
    """Bisect for the critical probability at each grid size."""
    mc = config.montecarlo
    tol = args.tol if args.tol is not None else mc.pc_tolerance
    rows = []
    for n in args.n:
        estimate = estimate_pc(
            n,
            mc.trials,
            tol,
            mc.seed,
            workers=mc.workers,
            record_timing=config.output.record_timings,
        )
        rows.append(EstimateRow.from_estimate(estimate).model_dump())
    _emit_rows(rows, EstimateRow.columns(), config)
    return EXIT_OK


def _event_predicate(args: Any) -> tuple[EventPredicate, Rect]:
    if args.event in ("d1", "d2"):
        spec: FrameSpec = read_document(
            _require(args.frame, "--frame"), FrameSpecDocument
        ).to_domain()
        return GrowthEvent(spec, args.event), spec.r

    rect = _require(args.rect, "--rect")
    if args.event == "filled":
        return InternallyFilled(rect), rect
    direction = Direction.from_label(args.direction)
    if args.event == "crossed":
        return CrossingEvent(rect, direction), rect
    orientation = Orientation.VERTICAL if direction.is_horizontal else Orientation.HORIZONTAL
    return NoDoubleGapEvent(rect, orientation), rect


def event_prob_command(args: Any, config: RunConfig) -> int:
    """Estimate the probability of one event."""
    event, rect = _event_predicate(args)
    p = args.p if args.p is not None else config.constants.p
    mc = config.montecarlo
    estimate = estimate_event(
        event,
        p,
        rect,
        mc.trials,
        mc.seed,
        name=args.event,
        workers=mc.workers,
        record_timing=config.output.record_timings,
    )
    _emit_rows([EstimateRow.from_estimate(estimate).model_dump()], EstimateRow.columns(), config)
    return EXIT_OK


def _frame(args: Any) -> FrameSpec:
    document = read_document(_require(args.frame, "--frame"), FrameSpecDocument)
    spec: FrameSpec = document.to_domain()
    return spec


def bound_command(args: Any, config: RunConfig) -> int:
    """Evaluate one bound and print it as JSON."""
    constants = _constants(config, args.p)
    kind = args.kind
    report: BaseModel

    if kind == "pc":
        report = pc_lower_bound(_require(args.n, "--n"), constants)
    elif kind in ("cor-key", "key-small", "key-big"):
        spec = _frame(args)
        if kind == "cor-key":
            report = cor_key_bound(spec, args.j, constants)
        elif kind == "key-small":
            report = key_small_bound(spec, constants)
        else:
            report = key_big_bound(spec, constants)
    else:
        rect = _require(args.rect, "--rect")
        if kind == "droplet":
            report = droplet_bound(rect, constants)
        elif kind == "seeds":
            report = seeds_bound(rect, constants)
        elif kind == "crossing":
            no_gap, crossing = crossing_bounds(
                rect, constants, Direction.from_label(args.direction)
            )
            _emit_json(
                {"no_double_gap": no_gap.model_dump(), "crossing": crossing.model_dump()},
                config,
            )
            return EXIT_OK
        elif kind == "leaving-diagonal":
            report = leaving_diagonal_check(rect.short, rect.long, constants)
        elif kind == "thin":
            report = thin_rectangle_bound(rect, constants)
        else:
            report = two_big_rectangles_bound(rect, constants)

    _emit_json({"kind": kind, "report": report.model_dump()}, config)
    return EXIT_OK


def g_table_command(args: Any, config: RunConfig) -> int:
    """Tabulate g with the small-z sandwich."""
    if not 0.0 < args.z_min <= args.z_max or args.points < 1:
        raise PreconditionError("Need 0 < z-min <= z-max and points >= 1")
    rows = []
    for z in np.linspace(args.z_min, args.z_max, args.points):
        lower, upper = small_z_bounds(float(z))
        rows.append({"z": float(z), "g": g(float(z)), "g_lower": lower, "g_upper": upper})
    _emit_rows(rows, ["z", "g", "g_lower", "g_upper"], config)
    return EXIT_OK


def _hierarchy_payload(hierarchy: Any, initial: Config, constants: Constants) -> dict[str, Any]:
    good = check_good(hierarchy, constants)
    certificate = check_satisfied(hierarchy, initial)
    return {
        "hierarchy": HierarchyDocument.from_domain(hierarchy).model_dump(),
        "stats": stats(hierarchy, constants).model_dump(),
        "good": good.model_dump(),
        "certificate": certificate.model_dump(),
    }


def hier_command(args: Any, config: RunConfig) -> int:
    """Build a hierarchy, or check a stored one."""
    constants = config.constants
    if args.hier_command == "build":
        if args.config_json:
            initial = read_document(args.config_json, ConfigDocument).to_domain()
            rect = initial.domain
        else:
            p = _require(args.p, "--p")
            constants = constants.with_p(p)
            rect = args.rect
            sample = estimate_filled_conditioned(
                rect,
                p,
                1,
                config.montecarlo.seed,
                max_attempts=config.montecarlo.max_attempts,
            )
            if sample.partial:
                raise PreconditionError(f"No internally filled sample of {rect} found")
            initial = sample.configs[0]
        hierarchy = build_hierarchy(initial, rect, constants)
        payload = _hierarchy_payload(hierarchy, initial, constants)
        payload["config"] = ConfigDocument.from_domain(initial).model_dump()
        _emit_json(payload, config)
        return EXIT_OK

    if args.hier_command == "check":
        hierarchy = read_document(args.hierarchy, HierarchyDocument).to_domain()
        initial = read_document(args.config_json, ConfigDocument).to_domain()
        payload = _hierarchy_payload(hierarchy, initial, constants)
        _emit_json(payload, config)
        passed = payload["good"]["good"] and payload["certificate"]["satisfied"]
        return EXIT_OK if passed else EXIT_FAIL

    print("[ERROR] Choose 'hier build' or 'hier check'", file=sys.stderr)
    return EXIT_USAGE


def validate_command(args: Any, config: RunConfig) -> int:
    """Run validation suites and report verdicts."""
    mc = config.montecarlo
    params = load_mapping(args.params) if args.params else None
    reports = validate_inequality(
        args.suite, config.constants, mc.trials, mc.seed, mc.workers, params=params
    )
    rows = [report.model_dump(mode="json") for report in reports]
    _emit_rows(rows, VALIDATION_COLUMNS, config)
    failed = [r for r in reports if r.verdict is Verdict.FAIL]
    for report in failed:
        print(f"[FAIL] {report.suite}/{report.event}: {report.reason}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "sim": sim_command,
    "pc": pc_command,
    "event-prob": event_prob_command,
    "bound": bound_command,
    "g-table": g_table_command,
    "hier": hier_command,
    "validate": validate_command,
}


def main(argv: list[str] | None = None) -> int:
    """Main entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    # Show help if no command specified
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    if args.command == "init":
        return init_command(args)

    try:
        config = apply_overrides(args, RunConfig.load_from_file(args.config))
        setup_logging(config.logging)
        config.constants.ordering_violations()
        return COMMANDS[args.command](args, config)
    except BootstrapPercolationError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE


def main_sync() -> None:
    """Synchronous entry point for console_scripts."""
    sys.exit(main())


if __name__ == "__main__":
    main_sync()
