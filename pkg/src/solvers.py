"""
Recursive plane-separation solver for Point-On-3-Lines and the
3-Points-On-Line reduction, plus parameter selection and convex hulls.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .arrangement import locate
from .geometry_core import (
    IntersectionKind, Line, LineBundle, MalformedInstanceError, Point,
    dual_of_point, intersect, orientation,
)
from .quantum_model import CostLedger, ExecMode, amplitude_amplify, boost_reps, ceil_scaled_sqrt
from .sampling import separate_with_retries
from .settings_manager import SolverSettings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Params:
    alpha: float
    k: int
    k_asymptotic: int
    base_cutoff: int
    c2: float
    use_base_case: bool


def _alpha(n: int, c2: float) -> float:
    if n < 3:
        return 1.0
    return max(1.0, math.sqrt(2 * math.log(n) / (math.log(c2) + math.log(math.log(n)))))


def _balanced_k(n: int, eps: float, settings: SolverSettings) -> int:
    """Sample size minimising one level of the charged recurrence."""
    reps = boost_reps(eps / 2)
    best_k, best_cost = 4, None
    for k in range(4, n):
        t = k * k + k + 2
        m = min(n, math.ceil(settings.crossing_factor * n / k))
        leaf = m * m * max(1, math.ceil(math.log2(m)))
        cost = n * t + ceil_scaled_sqrt(settings.c_aa, t) * reps * leaf
        if best_cost is None or cost < best_cost:
            best_k, best_cost = k, cost
    return best_k


def choose_parameters(n: int, eps: float, c2: float = 8.0,
                      settings: Optional[SolverSettings] = None) -> Params:
    """
    Sample size and recursion exponent for an instance of n lines.

    ``k_asymptotic`` is always the clamped asymptotic formula; ``k`` follows the
    configured rule.
    """
    settings = settings or SolverSettings()
    if n < 2:
        raise ValueError(f"choose_parameters needs n >= 2, got {n}")
    alpha = _alpha(n, c2)
    raw = n ** (1 / alpha) * 3 * (5 * math.log(n) + math.log(2 / eps))
    if n < 5:
        return Params(alpha, max(1, n - 1), max(1, n - 1), settings.base_cutoff, c2, True)
    k_asymptotic = min(max(4, math.ceil(raw)), n - 1)
    k = k_asymptotic if settings.k_rule == "asymptotic" else _balanced_k(n, eps, settings)
    use_base = n < settings.base_cutoff
    return Params(alpha, k, k_asymptotic, settings.base_cutoff, c2, use_base)


@dataclass(frozen=True)
class ConcurrencyWitness:
    lines: Tuple[int, int, int]
    point: Point


def _verify_concurrency(lines: Sequence[Line], witness: ConcurrencyWitness) -> bool:
    return (len(set(witness.lines)) == 3
            and all(lines[i].contains(witness.point) for i in witness.lines))


class PointOn3LinesSolver:
    """One solve of Point-On-3-Lines under a fixed mode, ledger and rng."""

    def __init__(self, lines: Sequence[Line], eps: float, mode: ExecMode,
                 ledger: CostLedger, rng: np.random.Generator,
                 settings: Optional[SolverSettings] = None):
        self.logger = logging.getLogger(__name__)
        self.lines = list(lines)
        self.eps = eps
        self.mode = mode
        self.ledger = ledger
        self.rng = rng
        self.settings = settings or SolverSettings()
        self.unique: List[Line] = []
        self.origin: List[int] = []

    def solve(self) -> Optional[ConcurrencyWitness]:
        shortcut = self._coincident_prepass()
        if shortcut is not None:
            self.logger.debug(f"Coincident copies give {shortcut}")
            return shortcut
        if len(self.unique) < 3:
            return None

        target = self._locate_target() if self.mode.charged else None
        ids = np.arange(len(self.unique))
        found = self._algo(ids, self.eps, 0, target, self.ledger)
        self.logger.debug(f"Point-On-3-Lines n={len(self.lines)} {self.mode.mode.value}: "
                          f"{'found' if found else 'none'}, ledger {self.ledger.to_record()}")
        if found is None:
            return None
        witness = ConcurrencyWitness(tuple(self.origin[i] for i in found.lines), found.point)
        if not _verify_concurrency(self.lines, witness):
            raise AssertionError(f"Witness {witness} failed re-verification")
        return witness

    def _coincident_prepass(self) -> Optional[ConcurrencyWitness]:
        copies: Dict[Line, List[int]] = {}
        for idx, line in enumerate(self.lines):
            copies.setdefault(line, []).append(idx)
        self.unique = list(copies)
        self.origin = [group[0] for group in copies.values()]
        self.ledger.charge(steps=len(self.lines))

        for line, group in copies.items():
            if len(group) >= 3:
                return ConcurrencyWitness(tuple(group[:3]), line.point_at(0))
        for line, group in copies.items():
            if len(group) != 2:
                continue
            for other, others in copies.items():
                meet = intersect(line, other)
                if meet.kind is IntersectionKind.POINT:
                    return ConcurrencyWitness((group[0], group[1], others[0]), meet.point)
        return None

    def _locate_target(self) -> Optional[Point]:
        """Exact per-line crossing-key scan; scaffolding for the charged descent."""
        bundle = LineBundle(self.unique)
        for line in self.unique:
            groups = bundle.crossing_groups(line)
            if groups:
                return intersect(line, self.unique[groups[0][0]]).point
        return None

    def _base_case(self, ids: np.ndarray, ledger: CostLedger, depth: int) -> Optional[ConcurrencyWitness]:
        m = len(ids)
        pairs = m * (m - 1) // 2
        ledger.charge(queries=m, steps=pairs * max(1, math.ceil(math.log2(max(2, pairs)))),
                      depth=depth)
        incident: Dict[Point, set] = {}
        for a in range(m):
            for b in range(a + 1, m):
                i, j = int(ids[a]), int(ids[b])
                meet = intersect(self.unique[i], self.unique[j])
                if meet.kind is not IntersectionKind.POINT:
                    continue
                seen = incident.setdefault(meet.point, set())
                seen.update((i, j))
                if len(seen) >= 3:
                    return ConcurrencyWitness(tuple(sorted(seen)[:3]), meet.point)
        return None

    def _algo(self, ids: np.ndarray, eps: float, depth: int, target: Optional[Point],
              ledger: CostLedger) -> Optional[ConcurrencyWitness]:
        m = len(ids)
        if m < 3:
            ledger.charge(queries=m, depth=depth)
            return None
        params = choose_parameters(m, eps, self.settings.c2, self.settings)
        if params.use_base_case or params.k >= m:
            return self._base_case(ids, ledger, depth)

        subset = [self.unique[i] for i in ids]
        separation = separate_with_retries(subset, params.k, eps / 2, self.rng, ledger,
                                           self.settings.retry_budget, depth=depth)
        for found in separation.boundary_witnesses:
            chosen = tuple(int(ids[i]) for i in found.lines[:3])
            return ConcurrencyWitness(chosen, found.point)

        regions = separation.regions
        t = len(regions)
        children = [ids[cs] for cs in separation.crossing_sets]
        memo: Dict[int, Tuple[CostLedger, Optional[ConcurrencyWitness]]] = {}

        def descend(j: int, child: CostLedger, target_point) -> Optional[ConcurrencyWitness]:
            sub_ids = children[j]
            if len(sub_ids) >= m:
                return self._base_case(sub_ids, child, depth + 1)
            return self._algo(sub_ids, eps, depth + 1, target_point, child)

        def charged_path(child: CostLedger):
            if target is not None:
                j = locate(regions, target)[0]
            else:
                j = max(range(t), key=lambda r: len(children[r]))
            return descend(j, child, target)

        def sample_once(rng, child: CostLedger):
            j = int(rng.integers(t))
            sub_ids = children[j]
            below = len(sub_ids) < 3 or len(sub_ids) >= m or choose_parameters(
                max(2, len(sub_ids)), eps, self.settings.c2, self.settings).use_base_case
            if not below:
                return descend(j, child, None)
            if j not in memo:
                cached = CostLedger()
                memo[j] = (cached, descend(j, cached, None))
            cached, result = memo[j]
            child.merge(cached)
            return result

        return amplitude_amplify(
            sample_once, Fraction(1, t), eps / 2, self.mode, ledger, self.rng,
            charged_path=charged_path,
            verify=lambda w: _verify_concurrency(self.unique, w),
            depth=depth,
        )


def solve_point_on_3_lines(lines: Sequence[Line], eps: float, mode: ExecMode,
                           ledger: CostLedger, rng: np.random.Generator,
                           settings: Optional[SolverSettings] = None) -> Optional[ConcurrencyWitness]:
    """
    Find three input lines through a common point.

    Args:
        lines: Input lines; three or more equal lines count as concurrent
        eps: Failure budget
        mode: Charged or sampling emulation
        ledger: Cost ledger
        rng: numpy random generator
        settings: Solver settings

    Returns:
        Optional[ConcurrencyWitness]: Original indices and the common point
    """
    return PointOn3LinesSolver(lines, eps, mode, ledger, rng, settings).solve()


def convex_hull(points: Sequence[Point], ledger: Optional[CostLedger] = None) -> List[Point]:
    """Counter-clockwise hull by the monotone chain; collinear points dropped."""
    pts = sorted(set(points))
    if ledger is not None:
        ledger.charge(steps=len(pts) * max(1, math.ceil(math.log2(max(2, len(pts))))))
    if len(pts) <= 2:
        return pts

    def chain(sequence):
        out: List[Point] = []
        for p in sequence:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class CollinearWitness:
    points: Tuple[int, int, int]
    line: Line


def solve_3_points_on_line(points: Sequence[Point], eps: float, mode: ExecMode,
                           ledger: CostLedger, rng: np.random.Generator,
                           settings: Optional[SolverSettings] = None) -> Optional[CollinearWitness]:
    """Three collinear points: vertical pre-pass, then the dual line problem."""
    points = list(points)
    if len(set(points)) != len(points):
        raise MalformedInstanceError("3-Points-On-Line needs distinct points")
    n = len(points)
    ledger.charge(steps=n * max(1, math.ceil(math.log2(max(2, n)))))

    by_x: Dict[Fraction, List[int]] = {}
    for idx in sorted(range(n), key=lambda i: points[i]):
        by_x.setdefault(points[idx].x, []).append(idx)
    for x, group in by_x.items():
        if len(group) >= 3:
            return CollinearWitness(tuple(group[:3]), Line.at_x(x))

    found = solve_point_on_3_lines([dual_of_point(p) for p in points], eps, mode,
                                   ledger, rng, settings)
    if found is None:
        return None
    i, j, l = found.lines
    witness = CollinearWitness((i, j, l), Line.through(points[i], points[j]))
    if orientation(points[i], points[j], points[l]) != 0:
        raise AssertionError(f"Points {witness.points} are not collinear")
    return witness
