"""
Classical emulation of Grover search and amplitude amplification.

Answers are computed classically and exactly; what the quantum routines
would cost is charged to a ``CostLedger`` from closed-form formulas.
"""

import logging
import math
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


def ceil_scaled_sqrt(c: float, m: int) -> int:
    """Exact ceil(c * sqrt(m)) for c >= 0 and m >= 0."""
    if m <= 0 or c <= 0:
        return 0
    target = Fraction(c) ** 2 * m
    q = math.isqrt(math.ceil(target))
    while q * q < target:
        q += 1
    while q > 0 and (q - 1) * (q - 1) >= target:
        q -= 1
    return q


def boost_reps(eps: float) -> int:
    """Repetitions lifting success probability 2/3 to 1 - eps/2."""
    if not 0 < eps < 1:
        raise ValueError(f"Failure budget must be in (0, 1), got {eps}")
    return max(1, math.ceil(math.log(2 / eps) / math.log(3)))


@dataclass
class CostLedger:
    """Counters of quantum queries and classical steps for one run."""
    quantum_queries: int = 0
    classical_steps: int = 0
    aa_invocations: int = 0
    max_recursion_depth: int = 0
    size_bound_violations: int = 0
    levels: Dict[int, List[int]] = field(default_factory=dict)

    def charge(self, queries: int = 0, steps: int = 0, depth: int = 0):
        if queries < 0 or steps < 0:
            raise ValueError("Ledger charges must be non-negative")
        self.quantum_queries += queries
        self.classical_steps += steps
        self.max_recursion_depth = max(self.max_recursion_depth, depth)
        level = self.levels.setdefault(depth, [0, 0])
        level[0] += queries
        level[1] += steps

    def merge(self, other: "CostLedger", times: int = 1):
        """Add ``times`` copies of another ledger's costs into this one."""
        if times < 0:
            raise ValueError("Merge multiplier must be non-negative")
        self.quantum_queries += other.quantum_queries * times
        self.classical_steps += other.classical_steps * times
        self.aa_invocations += other.aa_invocations * times
        self.size_bound_violations += other.size_bound_violations
        self.max_recursion_depth = max(self.max_recursion_depth, other.max_recursion_depth)
        for depth, (queries, steps) in other.levels.items():
            level = self.levels.setdefault(depth, [0, 0])
            level[0] += queries * times
            level[1] += steps * times

    @property
    def total(self) -> int:
        return self.quantum_queries + self.classical_steps

    def per_level(self) -> List[Tuple[int, int, int]]:
        return [(depth, q, s) for depth, (q, s) in sorted(self.levels.items())]

    def to_record(self) -> Dict[str, int]:
        return {
            "quantum_queries": self.quantum_queries,
            "classical_steps": self.classical_steps,
            "aa_invocations": self.aa_invocations,
            "depth": self.max_recursion_depth,
            "size_bound_violations": self.size_bound_violations,
        }


class Mode(Enum):
    CHARGED = "charged"
    SAMPLING = "sampling"


@dataclass(frozen=True)
class ExecMode:
    mode: Mode = Mode.CHARGED
    c_grover: float = 1.0
    c_aa: float = 2.0

    def __post_init__(self):
        if self.c_grover < 1 or self.c_aa < 1:
            raise ValueError("Emulation constants must be >= 1")

    @classmethod
    def from_settings(cls, settings, mode) -> "ExecMode":
        return cls(Mode(mode), settings.c_grover, settings.c_aa)

    @property
    def charged(self) -> bool:
        return self.mode is Mode.CHARGED

    def aa_multiplier(self, p_lower: float, eps: float) -> int:
        """ceil(C_aa / sqrt(p)) * boost_reps(eps)."""
        return _ceil_aa(self.c_aa, p_lower) * boost_reps(eps)


def _ceil_aa(c_aa: float, p_lower) -> int:
    """ceil(C_aa / sqrt(p)), exact when 1/p is an integer."""
    inverse = Fraction(1) / Fraction(p_lower)
    if inverse.denominator == 1:
        return ceil_scaled_sqrt(c_aa, int(inverse))
    return math.ceil(c_aa / math.sqrt(float(p_lower)))


def grover_search(m: int, marked: Callable[[int], bool], ledger: CostLedger,
                  c_grover: float = 1.0, step_cost: int = 0,
                  depth: int = 0) -> Optional[int]:
    """
    Emulated search for a marked index in [0, m).

    Args:
        m: Domain size
        marked: Total predicate over indices
        ledger: Ledger charged ceil(c_grover * sqrt(m)) queries
        c_grover: Grover constant
        step_cost: Classical steps per oracle call, charged per query
        depth: Recursion depth recorded with the charge

    Returns:
        Optional[int]: Lowest marked index, or None
    """
    queries = ceil_scaled_sqrt(c_grover, m)
    ledger.charge(queries=queries, steps=queries * step_cost, depth=depth)
    found = next((index for index in range(m) if marked(index)), None)
    if found is not None and not marked(found):
        raise AssertionError(f"Marked index {found} failed re-verification")
    return found


def amplitude_amplify(sub: Callable, p_lower, eps_target: float, mode: ExecMode,
                      ledger: CostLedger, rng=None, charged_path: Optional[Callable] = None,
                      verify: Optional[Callable] = None, depth: int = 0):
    """
    Emulate amplitude amplification of a one-sided-error subroutine.

    ``sub(rng, child_ledger)`` is one randomized run. In charged mode the
    deterministic ``charged_path(child_ledger)`` (falling back to ``sub``) runs
    once and its cost is merged ceil(C_aa/sqrt(p)) * boost_reps(eps) times.
    In sampling mode ``sub`` is repeated up to ceil(ln(2/eps)/p) times.

    Returns:
        The first result passing ``verify``, or None
    """
    if not 0 < p_lower <= 1:
        raise ValueError(f"Success probability bound must be in (0, 1], got {p_lower}")
    check = verify or (lambda result: result is not None)
    ledger.aa_invocations += 1
    ledger.max_recursion_depth = max(ledger.max_recursion_depth, depth)

    if mode.charged:
        child = CostLedger()
        result = charged_path(child) if charged_path is not None else sub(rng, child)
        ledger.merge(child, times=mode.aa_multiplier(p_lower, eps_target))
        return result if result is not None and check(result) else None

    budget = max(1, math.ceil(math.log(2 / eps_target) / float(p_lower)))
    for attempt in range(budget):
        child = CostLedger()
        result = sub(rng, child)
        ledger.merge(child)
        if result is not None and check(result):
            logger.debug(f"Amplitude amplification succeeded after {attempt + 1}/{budget} runs")
            return result
    return None


@dataclass(frozen=True)
class ThreeSumWitness:
    positions: Tuple[int, int, int]
    values: Tuple[int, int, int]


def solve_3sum(values: Sequence[int], mode: ExecMode, ledger: CostLedger) -> Optional[ThreeSumWitness]:
    """
    Grover emulation over ordered pairs, looking up -(a + b) in a sorted index.

    Charges ceil(C_g * n) queries and ceil(log2 n) steps per oracle call.
    """
    values = [int(v) for v in values]
    n = len(values)
    ordered = sorted(values)
    counts = Counter(values)
    log_n = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    ledger.charge(steps=n * log_n)

    def third(i: int, j: int) -> Optional[int]:
        target = -(values[i] + values[j])
        pos = bisect_left(ordered, target)
        if pos == n or ordered[pos] != target:
            return None
        available = counts[target] - (values[i] == target) - (values[j] == target)
        if available < 1:
            return None
        return next(l for l, v in enumerate(values) if v == target and l not in (i, j))

    def marked(index: int) -> bool:
        i, j = divmod(index, n)
        return i != j and third(i, j) is not None

    found = grover_search(n * n, marked, ledger, mode.c_grover, step_cost=log_n)
    if found is None:
        return None
    i, j = divmod(found, n)
    l = third(i, j)
    witness = ThreeSumWitness((i, j, l), (values[i], values[j], values[l]))
    if sum(witness.values) != 0 or len(set(witness.positions)) != 3:
        raise AssertionError(f"Invalid 3Sum witness {witness}")
    return witness
