"""
Random plane separation: sample boundary lines, triangulate their
arrangement and compute which input objects cross each region.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .arrangement import RegionSet, build_arrangement, compute_clip_box, triangulate
from .geometry_core import (
    GeometryError, HalfPlane, Line, LineBundle, Point, intersect,
)

logger = logging.getLogger(__name__)

# Upper bound on int8 cells materialised per chunk of the crossing tables
_CHUNK_CELLS = 4_000_000


class SamplingError(GeometryError):
    """Raised for invalid separation requests."""


class SizeBoundExceeded(SamplingError):
    """Some crossing set is larger than the size bound; retry with a new sample."""

    def __init__(self, max_crossing: int, threshold: int):
        super().__init__(f"Largest crossing set {max_crossing} exceeds bound {threshold}")
        self.max_crossing = max_crossing
        self.threshold = threshold


@dataclass(frozen=True)
class SizeBound:
    threshold: int


def size_bound(n: int, k: int, eps: float) -> SizeBound:
    """ceil(3 * (n / k) * (5 ln n + ln(2 / eps))), at least 1."""
    if not 1 <= k <= n:
        raise SamplingError(f"size_bound needs n >= k >= 1, got n={n}, k={k}")
    if not 0 < eps < 1:
        raise SamplingError(f"Failure budget must be in (0, 1), got {eps}")
    value = 3 * (n / k) * (5 * math.log(n) + math.log(2 / eps))
    return SizeBound(max(1, math.ceil(value)))


class Relation(Enum):
    NONE = 0
    PARTIAL = 1
    FULL = 2


@dataclass(frozen=True)
class BoundaryWitness:
    point: Point
    lines: Tuple[int, ...]  # pool ids of the concurrent lines


@dataclass
class Separation:
    """
    Result of one random plane separation.

    ``pool`` holds the distinct boundary lines of the input objects;
    ``line_sets[i]`` are the pool lines touching the closed region i and
    ``crossing_sets[i]`` the input objects crossing it (for covering input,
    the objects that cover region i only partially).
    """
    pool: List[Line]
    object_lines: List[Tuple[int, ...]]
    sample: List[int]
    regions: RegionSet
    line_sets: List[np.ndarray]
    crossing_sets: List[np.ndarray]
    fully_covering: List[np.ndarray] = field(default_factory=list)
    relations: Optional[np.ndarray] = None
    boundary_witnesses: List[BoundaryWitness] = field(default_factory=list)
    threshold: int = 0

    @property
    def max_crossing(self) -> int:
        return max((len(s) for s in self.line_sets), default=0)

    @property
    def size_violation(self) -> bool:
        return self.max_crossing > self.threshold

    def region_relation(self, region: int, obj: int) -> Relation:
        if self.relations is None:
            raise SamplingError("Relations are only computed for covering objects")
        return Relation(int(self.relations[obj, region]))


def _boundary_pool(objects) -> Tuple[List[Line], List[Tuple[int, ...]]]:
    index: Dict[Line, int] = {}
    object_lines = []
    for obj in objects:
        lines = (obj,) if isinstance(obj, Line) else obj.boundary_lines()
        ids = []
        for line in lines:
            if line not in index:
                index[line] = len(index)
            ids.append(index[line])
        object_lines.append(tuple(ids))
    return list(index), object_lines


def _touch_and_sides(bundle: LineBundle, rs: RegionSet, corners: np.ndarray,
                     keep_sides: bool):
    """Bool matrix (lines x regions) of lines meeting each closed region."""
    batch = rs.vertex_batch
    n, t = len(bundle), len(corners)
    touch = np.zeros((n, t), dtype=bool)
    sides = np.zeros((n, len(batch)), dtype=np.int8) if keep_sides else None
    rows = max(1, _CHUNK_CELLS // max(1, 3 * t, len(batch)))
    for start in range(0, n, rows):
        block = slice(start, min(n, start + rows))
        signs = bundle.sides(batch, block)
        if keep_sides:
            sides[block] = signs
        at_corners = signs[:, corners]
        touch[block] = (at_corners.min(axis=2) <= 0) & (at_corners.max(axis=2) >= 0)
    return touch, sides


def _relations(objects, object_lines, touch, sides, corners, closed_cover) -> np.ndarray:
    relations = np.zeros((len(objects), len(corners)), dtype=np.int8)
    for oid, (obj, ids) in enumerate(zip(objects, object_lines)):
        ids = list(ids)
        values = sides[ids][:, corners]  # lines x regions x 3
        meets = touch[ids].any(axis=0)
        if closed_cover:
            if not isinstance(obj, HalfPlane):
                raise SamplingError("Closed coverage is defined for half-planes only")
            inside = values[0] * obj.side >= 0
            full = inside.all(axis=1)
            partial = inside.any(axis=1) & ~full
        else:
            steady = (values == values[:, :, :1]).all(axis=2).all(axis=0)
            strict = (values != 0).all(axis=2).all(axis=0)
            vector = values[:, :, 0].T
            allowed = np.zeros(len(corners), dtype=bool)
            for pattern in obj.interior_patterns():
                allowed |= (vector == np.array(pattern, dtype=np.int8)).all(axis=1)
            full = steady & strict & allowed
            partial = meets & ~full
        relations[oid, full] = Relation.FULL.value
        relations[oid, partial] = Relation.PARTIAL.value
    return relations


def _witnesses_on(sample_lines: Sequence[int], pool: List[Line],
                  bundle: LineBundle) -> List[BoundaryWitness]:
    found: Dict[Point, set] = {}
    for sid in sample_lines:
        line = pool[sid]
        for group in bundle.crossing_groups(line):
            point = intersect(line, pool[group[0]]).point
            found.setdefault(point, set()).update(group)
            found[point].add(sid)
    return [BoundaryWitness(p, tuple(sorted(ids))) for p, ids in sorted(found.items())]


def random_plane_separation(objects: Sequence, k: int, eps: float, rng: np.random.Generator,
                            ledger=None, closed_cover: bool = False,
                            include_points: Sequence[Point] = (), depth: int = 0,
                            check_bound: bool = True) -> Separation:
    """
    Sample k distinct boundary lines and separate the plane by them.

    Args:
        objects: Lines, or covering objects exposing boundary_lines()
        k: Number of boundary lines to sample
        eps: Failure budget of the size bound
        rng: numpy random generator
        ledger: Optional ledger (n queries, n*t + k*n steps)
        closed_cover: Use closed half-plane semantics for region relations
        include_points: Points the clip box must contain
        depth: Recursion depth recorded with the charges
        check_bound: Raise SizeBoundExceeded when the bound is violated

    Returns:
        Separation: Regions with crossing sets and witnesses
    """
    objects = list(objects)
    pool, object_lines = _boundary_pool(objects)
    if not 1 <= k <= len(pool):
        raise SamplingError(f"Sample size {k} outside [1, {len(pool)}]")

    sample = sorted(int(i) for i in rng.choice(len(pool), size=k, replace=False))
    box = compute_clip_box(pool, include=include_points)
    rs = triangulate(build_arrangement([pool[i] for i in sample], box, ledger, depth))
    corners = np.array([region.vertices for region in rs.regions], dtype=np.intp).reshape(-1, 3)

    bundle = LineBundle(pool)
    lines_only = all(isinstance(obj, Line) for obj in objects)
    touch, sides = _touch_and_sides(bundle, rs, corners, keep_sides=not lines_only)
    by_region = touch.T
    line_sets = [np.nonzero(row)[0] for row in by_region]

    relations = None
    fully_covering: List[np.ndarray] = []
    witnesses: List[BoundaryWitness] = []
    if lines_only:
        owners = np.full(len(pool), -1, dtype=np.intp)
        for oid, (pid,) in enumerate(object_lines):
            owners[pid] = oid
        crossing_sets = [owners[ids] for ids in line_sets]
        witnesses = _witnesses_on(sample, pool, bundle)
    else:
        relations = _relations(objects, object_lines, touch, sides, corners, closed_cover)
        crossing_sets = [np.nonzero(relations[:, i] == Relation.PARTIAL.value)[0]
                         for i in range(len(rs))]
        fully_covering = [np.nonzero(relations[:, i] == Relation.FULL.value)[0]
                          for i in range(len(rs))]

    if ledger is not None:
        ledger.charge(queries=len(objects),
                      steps=len(pool) * len(rs) + k * len(pool), depth=depth)

    separation = Separation(
        pool=pool, object_lines=object_lines, sample=sample, regions=rs,
        line_sets=line_sets, crossing_sets=crossing_sets,
        fully_covering=fully_covering, relations=relations,
        boundary_witnesses=witnesses,
        threshold=size_bound(len(pool), k, eps).threshold,
    )
    logger.debug(f"Separation depth={depth}: n={len(pool)} k={k} t={len(rs)} "
                 f"max|s(R)|={separation.max_crossing} bound={separation.threshold}")
    if check_bound and separation.size_violation:
        if ledger is not None:
            ledger.size_bound_violations += 1
        raise SizeBoundExceeded(separation.max_crossing, separation.threshold)
    return separation


def separate_with_retries(objects: Sequence, k: int, eps: float, rng: np.random.Generator,
                          ledger=None, retry_budget: int = 3, **kwargs) -> Separation:
    """Retry random_plane_separation on size-bound violations, up to the budget."""
    for attempt in range(retry_budget + 1):
        try:
            return random_plane_separation(objects, k, eps, rng, ledger, **kwargs)
        except SizeBoundExceeded as e:
            if attempt == retry_budget:
                raise
            logger.warning(f"{e}; resampling ({attempt + 1}/{retry_budget})")
