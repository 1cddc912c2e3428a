#!/usr/bin/env python3
"""
Plane-Separation Geometry Solver - Main Application

Command-line entry point: solve instance files, generate planted and
unplanted instances, check solvers against brute-force oracles, run cost
benchmarks and inspect single separations.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from src.arrangement import dump_arrangement
from src.bench import cost_ratios, run_bench, run_verify, write_csv
from src.geometry_core import GeometryError, Line
from src.instances import (
    GenerationError, InstanceFormatError, Problem, gen_instance, read_instance,
    solve_instance, write_instance,
)
from src.quantum_model import CostLedger, ExecMode
from src.render import render_separation
from src.sampling import SamplingError, random_plane_separation
from src.settings_manager import SettingsManager

EXIT_FOUND, EXIT_NOT_FOUND, EXIT_ERROR = 0, 1, 2

PROBLEMS = [p.value for p in Problem]


class GeometrySolverApp:
    """Main application class that wires settings, logging and the commands."""

    def __init__(self, config_file: Optional[Path] = None, log_level: Optional[str] = None):
        """
        Initialize the application.

        Args:
            config_file: Optional settings file overriding the platform default
            log_level: Optional level overriding the configured one
        """
        self.settings_manager = SettingsManager(config_file)
        self.settings = self.settings_manager.settings
        self.logger = self._setup_logging(log_level or self.settings.log_level)

    def _setup_logging(self, level: str) -> logging.Logger:
        """Setup application logging on stderr; stdout carries results."""
        logging.basicConfig(
            level=getattr(logging, level.upper(), logging.INFO),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=[logging.StreamHandler(sys.stderr)],
            force=True,
        )

        # Reduce noise from some libraries
        logging.getLogger('PIL').setLevel(logging.WARNING)

        return logging.getLogger(__name__)

    def cmd_solve(self, args) -> int:
        inst = read_instance(args.input)
        if inst.problem.value != args.problem:
            raise InstanceFormatError(f"{args.input} holds a {inst.problem.value} instance")
        ledger = CostLedger()
        rng = np.random.default_rng(args.seed)
        mode = ExecMode.from_settings(self.settings, args.mode)
        outcome = solve_instance(inst, args.epsilon, mode, ledger, rng, self.settings)

        print(f"answer: {'found' if outcome.found else 'not-found'}")
        if outcome.found:
            print(f"witness: {outcome.witness}")
        for key, value in ledger.to_record().items():
            print(f"{key}: {value}")
        return EXIT_FOUND if outcome.found else EXIT_NOT_FOUND

    def cmd_gen(self, args) -> int:
        inst = gen_instance(Problem(args.problem), args.n, args.planted, args.seed, self.settings)
        write_instance(inst, args.out)
        self.logger.info(f"Wrote {inst.problem.value} n={inst.n} "
                         f"(planted={inst.planted}, verified={inst.verified}) to {args.out}")
        return EXIT_FOUND

    def cmd_verify(self, args) -> int:
        report = run_verify(args.problem, args.n, args.trials, args.epsilon, args.seed,
                            args.mode, self.settings)
        print(f"problem: {report.problem}")
        print(f"n: {report.n}")
        print(f"trials: {report.trials}")
        print(f"mismatches: {report.mismatches}")
        print(f"generation_errors: {report.errors}")
        print(f"failure_rate: {report.failure_rate:.4f}")
        return EXIT_FOUND if report.mismatches == 0 else EXIT_NOT_FOUND

    def cmd_bench(self, args) -> int:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
        records = run_bench(args.problem, sizes, args.trials, args.epsilon, args.mode,
                            args.seed, args.workers, not args.unplanted, self.settings)
        write_csv(records, args.out, wall_clock=not args.no_wall_clock)
        self.logger.info(f"Wrote {len(records)} rows to {args.out}")
        for small, large, ratio in cost_ratios(records):
            print(f"cost({large})/cost({small}) = {ratio:.4f}")
        return EXIT_FOUND

    def cmd_arrange(self, args) -> int:
        inst = read_instance(args.input)
        lines = [obj for obj in inst.objects if isinstance(obj, Line)]
        if len(lines) != inst.n:
            raise InstanceFormatError("arrange expects an instance made of lines")
        rng = np.random.default_rng(args.seed)
        separation = random_plane_separation(lines, args.k, args.epsilon, rng, CostLedger(),
                                             check_bound=False)
        print(f"k: {args.k}")
        print(f"regions: {len(separation.regions)}")
        print(f"max_crossing: {separation.max_crossing}")
        print(f"size_bound: {separation.threshold}")
        print(f"size_violation: {separation.size_violation}")
        if args.dump:
            Path(args.dump).write_text(dump_arrangement(separation.regions.arrangement),
                                       encoding="utf-8")
        if args.render:
            marks = [w.point for w in separation.boundary_witnesses]
            render_separation(separation, args.render, marks=marks)
        return EXIT_FOUND

    def cmd_config(self, args) -> int:
        if args.reset and not self.settings_manager.reset_to_defaults():
            return EXIT_ERROR
        if args.set:
            updates = dict(_parse_assignment(item) for item in args.set)
            if not self.settings_manager.update_settings(**updates):
                return EXIT_ERROR
        self.settings = self.settings_manager.settings
        if args.out:
            if not self.settings_manager.export_settings(args.out):
                return EXIT_ERROR
        else:
            print(json.dumps(self.settings.to_dict(), indent=2))
        return EXIT_FOUND

    def run(self, args) -> int:
        """Dispatch a parsed command and map failures to exit code 2."""
        handlers = {
            "solve": self.cmd_solve,
            "gen": self.cmd_gen,
            "verify": self.cmd_verify,
            "bench": self.cmd_bench,
            "arrange": self.cmd_arrange,
            "config": self.cmd_config,
        }
        try:
            return handlers[args.command](args)
        except (GeometryError, InstanceFormatError, GenerationError, SamplingError,
                ValueError, OSError) as e:
            self.logger.error(f"{args.command} failed: {e}")
            return EXIT_ERROR


def _parse_assignment(item: str):
    """Split KEY=VALUE; the value is read as JSON when it parses, else kept as text."""
    key, sep, raw = item.partition("=")
    if not sep or not key:
        raise ValueError(f"Expected KEY=VALUE, got {item!r}")
    try:
        return key.strip(), json.loads(raw)
    except json.JSONDecodeError:
        return key.strip(), raw


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgeom", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--config", type=Path, default=None, help="Settings JSON file")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Solve an instance file")
    solve.add_argument("problem", choices=PROBLEMS)
    solve.add_argument("--input", type=Path, required=True)
    solve.add_argument("--epsilon", type=float, default=0.1)
    solve.add_argument("--mode", choices=["charged", "sampling"], default="charged")
    solve.add_argument("--seed", type=int, default=0)

    gen = commands.add_parser("gen", help="Generate an instance file")
    gen.add_argument("problem", choices=PROBLEMS)
    gen.add_argument("--n", type=int, required=True)
    planted = gen.add_mutually_exclusive_group()
    planted.add_argument("--planted", dest="planted", action="store_true", default=True)
    planted.add_argument("--unplanted", dest="planted", action="store_false")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, required=True)

    verify = commands.add_parser("verify", help="Compare solver and oracle")
    verify.add_argument("problem", choices=PROBLEMS)
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--trials", type=int, default=10)
    verify.add_argument("--epsilon", type=float, default=0.1)
    verify.add_argument("--mode", choices=["charged", "sampling"], default="sampling")
    verify.add_argument("--seed", type=int, default=0)

    bench = commands.add_parser("bench", help="Cost sweep over instance sizes")
    bench.add_argument("problem", choices=PROBLEMS)
    bench.add_argument("--sizes", required=True, help="Comma separated, e.g. 512,1024")
    bench.add_argument("--trials", type=int, default=3)
    bench.add_argument("--epsilon", type=float, default=0.1)
    bench.add_argument("--mode", choices=["charged", "sampling"], default="charged")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument("--unplanted", action="store_true")
    bench.add_argument("--no-wall-clock", action="store_true")
    bench.add_argument("--out", type=Path, required=True)

    arrange = commands.add_parser("arrange", help="Build one separation of a lines instance")
    arrange.add_argument("--input", type=Path, required=True)
    arrange.add_argument("--k", type=int, required=True)
    arrange.add_argument("--epsilon", type=float, default=0.1)
    arrange.add_argument("--seed", type=int, default=0)
    arrange.add_argument("--dump", type=Path, default=None)
    arrange.add_argument("--render", type=Path, default=None)

    config = commands.add_parser("config", help="Show or write the effective settings")
    config.add_argument("--out", type=Path, default=None)
    config.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="Persist a setting; repeatable")
    config.add_argument("--reset", action="store_true", help="Restore and persist defaults")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    app = GeometrySolverApp(args.config, args.log_level)
    return app.run(args)


if __name__ == "__main__":
    sys.exit(main())
