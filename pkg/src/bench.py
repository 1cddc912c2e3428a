"""
Benchmark sweeps and oracle-equivalence runs.

Every trial gets its own seed derived from (master seed, size, trial) so
sweeps are reproducible whether they run serially or in a process pool.
"""

import csv
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .instances import GenerationError, Problem, gen_instance, oracle_instance, solve_instance
from .quantum_model import CostLedger, ExecMode, Mode
from .settings_manager import SolverSettings
from .solvers import choose_parameters

logger = logging.getLogger(__name__)


@dataclass
class BenchRecord:
    problem: str
    n: int
    trial: int
    k: int
    alpha: float
    k_rule: str
    eps: float
    mode: str
    seed: int
    answer: str
    quantum_queries: int
    classical_steps: int
    depth: int
    wall_seconds: float

    @property
    def total_cost(self) -> int:
        return self.quantum_queries + self.classical_steps


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


def trial_seeds(seed: int, n: int, trial: int) -> Tuple[int, np.random.Generator]:
    """Generator seed and solver rng for one trial."""
    sequence = np.random.SeedSequence([seed, n, trial])
    gen_seed = int(sequence.generate_state(1)[0])
    return gen_seed, np.random.default_rng(sequence.spawn(1)[0])


def _run_trial(problem: Problem, n: int, trial: int, eps: float, mode: str, seed: int,
               planted: bool, settings: SolverSettings) -> BenchRecord:
    params = choose_parameters(max(n, 2), eps, settings.c2, settings)
    ledger = CostLedger()
    start = time.perf_counter()
    try:
        gen_seed, rng = trial_seeds(seed, n, trial)
        inst = gen_instance(problem, n, planted, gen_seed, settings)
        outcome = solve_instance(inst, eps, ExecMode.from_settings(settings, mode), ledger, rng, settings)
        answer = "found" if outcome.found else "not-found"
    except Exception as e:
        logger.warning(f"Trial {trial} of {problem.value} n={n} failed: {e}")
        answer = f"error:{type(e).__name__}"
    elapsed = time.perf_counter() - start
    return BenchRecord(
        problem=problem.value, n=n, trial=trial, k=params.k, alpha=round(params.alpha, 6),
        k_rule=settings.k_rule, eps=eps, mode=mode, seed=seed, answer=answer,
        quantum_queries=ledger.quantum_queries, classical_steps=ledger.classical_steps,
        depth=ledger.max_recursion_depth, wall_seconds=round(elapsed, 6),
    )


def _run_trial_packed(args) -> BenchRecord:
    return _run_trial(*args)


def run_bench(problem, sizes: Sequence[int], trials: int, eps: float, mode: str = "charged",
              seed: int = 0, workers: int = 1, planted: bool = True,
              settings: Optional[SolverSettings] = None) -> List[BenchRecord]:
    """
    Generate, solve and cost one instance per (size, trial).

    Args:
        problem: Problem to sweep
        sizes: Instance sizes
        trials: Trials per size
        eps: Failure budget handed to the solver
        mode: ``charged`` or ``sampling``
        seed: Master seed
        workers: Process-pool size; 1 runs in this process
        planted: Generate positive instances
        settings: Solver settings

    Returns:
        List[BenchRecord]: Rows sorted by (n, trial)
    """
    problem = Problem(problem)
    Mode(mode)
    settings = settings or SolverSettings()
    jobs = [(problem, n, trial, eps, mode, seed, planted, settings)
            for n in sizes for trial in range(trials)]
    logger.info(f"Benchmarking {problem.value}: {len(jobs)} runs on {workers} worker(s)")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_trial_packed, jobs))
    else:
        records = [_run_trial_packed(job) for job in jobs]
    return sorted(records, key=lambda r: (r.n, r.trial))


def write_csv(records: Sequence[BenchRecord], path: Path, wall_clock: bool = True):
    """Write bench rows; without ``wall_clock`` the output is byte-reproducible."""
    columns = CSV_FIELDS if wall_clock else [c for c in CSV_FIELDS if c != "wall_seconds"]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for record in records:
            writer.writerow(asdict(record))


def cost_ratios(records: Sequence[BenchRecord]) -> List[Tuple[int, int, float]]:
    """Median total cost ratios between consecutive sizes, skipping failed trials."""
    by_size: Dict[int, List[int]] = {}
    for record in records:
        if not record.answer.startswith("error:"):
            by_size.setdefault(record.n, []).append(record.total_cost)
    sizes = sorted(by_size)
    ratios = []
    for small, large in zip(sizes, sizes[1:]):
        base = statistics.median(by_size[small])
        if base > 0:
            ratios.append((small, large, statistics.median(by_size[large]) / base))
    return ratios


@dataclass
class VerifyReport:
    problem: str
    n: int
    trials: int
    mismatches: int
    errors: int

    @property
    def failure_rate(self) -> float:
        return self.mismatches / self.trials if self.trials else 0.0


def run_verify(problem, n: int, trials: int, eps: float, seed: int = 0, mode: str = "sampling",
               settings: Optional[SolverSettings] = None) -> VerifyReport:
    """
    Compare solver answers against the brute-force oracle.

    Trials alternate planted and unplanted instances.
    """
    problem = Problem(problem)
    settings = settings or SolverSettings()
    exec_mode = ExecMode.from_settings(settings, mode)
    mismatches = errors = 0
    for trial in range(trials):
        gen_seed, rng = trial_seeds(seed, n, trial)
        try:
            inst = gen_instance(problem, n, trial % 2 == 0, gen_seed, settings)
            expected = oracle_instance(inst, settings).positive
            outcome = solve_instance(inst, eps, exec_mode, CostLedger(), rng, settings)
        except GenerationError as e:
            logger.warning(f"Skipping trial {trial}: {e}")
            errors += 1
            continue
        if outcome.found != expected:
            mismatches += 1
            logger.warning(f"Trial {trial}: solver said {outcome.found}, oracle {expected}")
    logger.info(f"Verified {problem.value} n={n}: {mismatches} mismatches in {trials} trials")
    return VerifyReport(problem.value, n, trials, mismatches, errors)
