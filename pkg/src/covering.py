"""
General-Covering by recursive plane separation, and the covering problems
reduced to it: strips over a box, triangles over a triangle, half-plane
depth, visibility between vertical segments and segment separators.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .arrangement import angular_key, locate
from .geometry_core import (
    Angle, Box, GuideLine, HalfPlane, IntersectionKind, Line, Location,
    MalformedInstanceError, Point, Segment, Strip, Triangle, classify_point,
    dual_of_point, dual_of_segment, intersect, orientation,
)
from .quantum_model import CostLedger, ExecMode, amplitude_amplify
from .sampling import separate_with_retries
from .settings_manager import SolverSettings
from .solvers import choose_parameters, convex_hull


Chain = Tuple[Tuple[Point, Point, Point], ...]


def _in_chain(p: Point, chain: Chain) -> bool:
    return all(orientation(a, b, p) >= 0 and orientation(b, c, p) >= 0
               and orientation(c, a, p) >= 0 for a, b, c in chain)


def uncovered_sector(x: Point, objects: Sequence, frame_lines: Sequence[Line],
                     inside: Callable[[Point], bool]) -> bool:
    """
    True when some angular sector at x, inside the target, misses every
    closed object.

    A probe is taken strictly inside each sector between consecutive lines
    through x, close enough that no other line separates it from x.
    """
    lines = dict.fromkeys(line for obj in objects for line in obj.boundary_lines())
    lines.update(dict.fromkeys(frame_lines))
    through = [line for line in lines if line.contains(x)]
    others = [line for line in lines if not line.contains(x)]
    if not through:
        through = [Line.non_vertical(0, x.y)]
    if len(through) == 1:
        through.append(Line.at_x(x.x) if not through[0].vertical else Line.non_vertical(0, x.y))

    directions = []
    for line in through:
        big_a, big_b, _ = line.coefficients
        directions += [(big_b, -big_a), (-big_b, big_a)]
    key = angular_key(x)
    directions.sort(key=lambda d: key(Point(x.x + d[0], x.y + d[1])))

    for u, v in zip(directions, directions[1:] + directions[:1]):
        wx, wy = u[0] + v[0], u[1] + v[1]
        delta = Fraction(1)
        for line in others:
            big_a, big_b, big_c = line.coefficients
            f = big_a * x.x + big_b * x.y + big_c
            g = big_a * wx + big_b * wy
            if f * g < 0:
                delta = min(delta, -f / g / 2)
        probe = Point(x.x + delta * wx, x.y + delta * wy)
        if inside(probe) and all(classify_point(probe, obj) is Location.EXTERIOR
                                 for obj in objects):
            return True
    return False


class RecursiveCovering:
    """
    Shared recursion of the covering solvers.

    Each level separates the plane by a sample of the current objects'
    boundary lines, drops regions a subclass rules out, and amplifies the
    random choice of a surviving region whose partially covering objects
    form the next level. Candidates are crossings of two boundary lines
    lying in every ancestor region.
    """

    closed_cover = False
    domain_lines = False

    def __init__(self, objects: Sequence, eps: float, mode: ExecMode, ledger: CostLedger,
                 rng: np.random.Generator, settings: Optional[SolverSettings] = None):
        self.logger = logging.getLogger(__name__)
        self.objects = list(objects)
        self.eps = eps
        self.mode = mode
        self.ledger = ledger
        self.rng = rng
        self.settings = settings or SolverSettings()
        self._lines = [obj.boundary_lines() for obj in self.objects]

    def initial_state(self):
        return None

    def refine(self, state, separation, region: int):
        """(alive, child state) of a region."""
        raise NotImplementedError

    def accept(self, point: Point, ids: np.ndarray, state) -> bool:
        raise NotImplementedError

    def verify(self, point: Point) -> bool:
        raise NotImplementedError

    def finished(self, state) -> bool:
        return False

    def solve(self) -> Optional[Point]:
        ids = np.arange(len(self.objects))
        state = self.initial_state()
        target = None
        if self.mode.charged:
            target = self._base_case(ids, (), state, CostLedger(), 0)
        found = self._algo(ids, (), state, self.eps, 0, target, self.ledger)
        self.logger.debug(f"{type(self).__name__} n={len(self.objects)} {self.mode.mode.value}: "
                          f"witness {found}")
        if found is not None and not self.verify(found):
            raise AssertionError(f"Covering witness {found} failed re-verification")
        return found

    def _line_count(self, ids) -> int:
        return len({line for i in ids for line in self._lines[i]})

    def _candidate_lines(self, ids, chain: Chain) -> List[Line]:
        lines = dict.fromkeys(line for i in ids for line in self._lines[i])
        if self.domain_lines:
            for a, b, c in chain:
                for p, q in ((a, b), (b, c), (c, a)):
                    lines.setdefault(Line.through(p, q))
        return list(lines)

    def _candidates(self, lines: List[Line], chain: Chain) -> Iterator[Point]:
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                meet = intersect(lines[i], lines[j])
                if meet.kind is IntersectionKind.POINT and _in_chain(meet.point, chain):
                    yield meet.point
        if self.domain_lines and not chain:
            for line in lines:
                yield line.point_at(0)

    def _base_case(self, ids, chain: Chain, state, ledger: CostLedger, depth: int) -> Optional[Point]:
        lines = self._candidate_lines(ids, chain)
        m = len(ids)
        pairs = len(lines) * (len(lines) - 1) // 2
        ledger.charge(queries=m, steps=pairs * max(1, math.ceil(math.log2(max(2, pairs)))),
                      depth=depth)
        checked = 0
        found = None
        for point in self._candidates(lines, chain):
            checked += 1
            if self.accept(point, ids, state):
                found = point
                break
        ledger.charge(steps=checked * max(1, m), depth=depth)
        return found

    def _algo(self, ids: np.ndarray, chain: Chain, state, eps: float, depth: int,
              target: Optional[Point], ledger: CostLedger) -> Optional[Point]:
        count = self._line_count(ids)
        if self.finished(state) or count < 5:
            return self._base_case(ids, chain, state, ledger, depth)
        params = choose_parameters(count, eps, self.settings.c2, self.settings)
        if params.use_base_case or params.k >= count:
            return self._base_case(ids, chain, state, ledger, depth)

        separation = separate_with_retries(
            [self.objects[i] for i in ids], params.k, eps / 2, self.rng, ledger,
            self.settings.retry_budget, closed_cover=self.closed_cover,
            include_points=[p for tri in chain for p in tri], depth=depth)
        regions = separation.regions

        survivors: Dict[int, object] = {}
        for j in range(len(regions)):
            alive, child_state = self.refine(state, separation, j)
            if alive:
                survivors[j] = child_state
        if not survivors:
            return None
        order = sorted(survivors)
        children = {j: ids[separation.crossing_sets[j]] for j in order}
        memo: Dict[int, Tuple[CostLedger, Optional[Point]]] = {}

        def descend(j: int, child: CostLedger, target_point) -> Optional[Point]:
            sub_ids = children[j]
            sub_chain = chain + (regions.points(regions.regions[j]),)
            if len(sub_ids) >= len(ids):
                return self._base_case(sub_ids, sub_chain, survivors[j], child, depth + 1)
            return self._algo(sub_ids, sub_chain, survivors[j], eps, depth + 1, target_point, child)

        def charged_path(child: CostLedger):
            hits = [j for j in locate(regions, target) if j in survivors] if target is not None else []
            if hits:
                return descend(hits[0], child, target)
            return descend(max(order, key=lambda r: len(children[r])), child, None)

        def sample_once(rng, child: CostLedger):
            j = order[int(rng.integers(len(order)))]
            if self._line_count(children[j]) >= self.settings.base_cutoff:
                return descend(j, child, None)
            if j not in memo:
                cached = CostLedger()
                memo[j] = (cached, descend(j, cached, None))
            cached, result = memo[j]
            child.merge(cached)
            return result

        return amplitude_amplify(sample_once, Fraction(1, len(order)), eps / 2, self.mode,
                                 ledger, self.rng, charged_path=charged_path,
                                 verify=self.verify, depth=depth)


class GeneralCovering(RecursiveCovering):
    """Crossing of two boundary lines outside every open object with P true."""

    def __init__(self, objects: Sequence, predicate: Callable[[Point], bool], *args, **kwargs):
        super().__init__(objects, *args, **kwargs)
        self.predicate = predicate

    def refine(self, state, separation, region: int):
        return len(separation.fully_covering[region]) == 0, state

    def accept(self, point: Point, ids, state) -> bool:
        return (all(classify_point(point, self.objects[i]) is not Location.INTERIOR for i in ids)
                and self.predicate(point))

    def verify(self, point: Point) -> bool:
        return self.accept(point, range(len(self.objects)), None)


@dataclass
class CoveringInstance:
    objects: List
    predicate: Callable[[Point], bool]
    guides: List[Line] = field(default_factory=list)


@dataclass(frozen=True)
class CoverResult:
    covered: bool
    witness: Optional[Point] = None


def solve_general_covering(inst: CoveringInstance, eps: float, mode: ExecMode,
                           ledger: CostLedger, rng: np.random.Generator,
                           settings: Optional[SolverSettings] = None) -> Optional[Point]:
    """
    Find a crossing of two boundary lines not interior to any strip or angle
    and satisfying the instance predicate.
    """
    for obj in inst.objects:
        if not isinstance(obj, (Strip, Angle)):
            raise MalformedInstanceError(f"General-Covering takes strips and angles, got {obj!r}")
    objects = list(inst.objects) + [GuideLine(line) for line in inst.guides]
    return GeneralCovering(objects, inst.predicate, eps, mode, ledger, rng, settings).solve()


def solve_strips_cover_box(strips: Sequence[Strip], box: Box, eps: float, mode: ExecMode,
                           ledger: CostLedger, rng: np.random.Generator,
                           settings: Optional[SolverSettings] = None) -> CoverResult:
    """Whether the closed strips cover the closed box; otherwise an uncovered witness."""
    strips = list(strips)
    frame = box.side_lines()

    def exposed(x: Point) -> bool:
        return box.contains(x) and uncovered_sector(x, strips, frame, box.strictly_contains)

    objects = strips + [GuideLine(line) for line in frame]
    witness = GeneralCovering(objects, exposed, eps, mode, ledger, rng, settings).solve()
    return CoverResult(witness is None, witness)


def solve_triangles_cover_triangle(triangles: Sequence[Triangle], target: Triangle, eps: float,
                                   mode: ExecMode, ledger: CostLedger, rng: np.random.Generator,
                                   settings: Optional[SolverSettings] = None) -> CoverResult:
    """Whether the closed triangles cover the closed target triangle."""
    triangles = list(triangles)
    frame = target.boundary_lines()

    def exposed(x: Point) -> bool:
        return (classify_point(x, target) is not Location.EXTERIOR
                and uncovered_sector(x, triangles, frame,
                                     lambda p: classify_point(p, target) is Location.INTERIOR))

    objects = triangles + [GuideLine(line) for line in frame]
    witness = GeneralCovering(objects, exposed, eps, mode, ledger, rng, settings).solve()
    return CoverResult(witness is None, witness)


class PointCovering(RecursiveCovering):
    """A point in at least t closed half-planes; state is the residual count."""

    closed_cover = True
    domain_lines = True

    def __init__(self, halfplanes: Sequence[HalfPlane], t: int, *args, **kwargs):
        super().__init__(halfplanes, *args, **kwargs)
        self.t = t

    def initial_state(self):
        return self.t

    def finished(self, state) -> bool:
        return state <= 0

    def refine(self, state, separation, region: int):
        residual = state - len(separation.fully_covering[region])
        return residual <= len(separation.crossing_sets[region]), residual

    def _depth(self, point: Point, ids) -> int:
        return sum(1 for i in ids
                   if self.objects[i].boundary.side_of(point) * self.objects[i].side >= 0)

    def accept(self, point: Point, ids, state) -> bool:
        return self._depth(point, ids) >= state

    def verify(self, point: Point) -> bool:
        return self._depth(point, range(len(self.objects))) >= self.t


def solve_point_covering(halfplanes: Sequence[HalfPlane], t: int, eps: float, mode: ExecMode,
                         ledger: CostLedger, rng: np.random.Generator,
                         settings: Optional[SolverSettings] = None) -> Optional[Point]:
    """A point covered by at least t of the closed half-planes, or None."""
    halfplanes = list(halfplanes)
    if not 1 <= t <= len(halfplanes):
        raise MalformedInstanceError(f"Depth threshold {t} outside [1, {len(halfplanes)}]")
    return PointCovering(halfplanes, t, eps, mode, ledger, rng, settings).solve()


def _require_vertical(segments: Sequence[Segment]):
    for segment in segments:
        if not segment.is_vertical:
            raise MalformedInstanceError(f"Segment {segment} is not vertical")


def solve_visibility_between_segments(segments: Sequence[Segment], s1: Segment, s2: Segment,
                                      eps: float, mode: ExecMode, ledger: CostLedger,
                                      rng: np.random.Generator,
                                      settings: Optional[SolverSettings] = None) -> Optional[Line]:
    """
    A line meeting s1 and s2 whose part between them avoids the open obstacles.

    Only obstacles strictly between s1 and s2 in x can block; the sightline
    may graze obstacle endpoints.
    """
    _require_vertical(list(segments) + [s1, s2])
    if s1.p.x == s2.p.x:
        raise MalformedInstanceError("s1 and s2 must lie on different vertical lines")
    left, right = sorted((s1.p.x, s2.p.x))
    blockers = [seg for seg in segments if left < seg.p.x < right]
    guides = [GuideLine(line) for seg in (s1, s2)
              for line in dual_of_segment(seg).boundary_lines()]

    def sees(x: Point) -> bool:
        line = dual_of_point(x)
        return s1.meets(line) and s2.meets(line)

    objects = [dual_of_segment(seg) for seg in blockers] + guides
    found = GeneralCovering(objects, sees, eps, mode, ledger, rng, settings).solve()
    return dual_of_point(found) if found is not None else None


def separates(line: Line, segments: Sequence[Segment], endpoints_needed: int = 2) -> bool:
    """
    Line avoids every open segment, touches endpoints of ``endpoints_needed``
    different segments and has segments on both of its sides.
    """
    sides = set()
    touching = 0
    for segment in segments:
        sp, sq = line.side_of(segment.p), line.side_of(segment.q)
        if sp * sq < 0:
            return False
        touching += sp == 0 or sq == 0
        sides.add(sp or sq)
    return touching >= endpoints_needed and sides == {1, -1}


def _same_x_separator(segments: Sequence[Segment]) -> Optional[Line]:
    for level in sorted({p.y for seg in segments for p in (seg.p, seg.q)}):
        line = Line.non_vertical(0, level)
        if separates(line, segments, endpoints_needed=1):
            return line
    return None


def solve_segment_separator(segments: Sequence[Segment], eps: float, mode: ExecMode,
                            ledger: CostLedger, rng: np.random.Generator,
                            settings: Optional[SolverSettings] = None) -> Optional[Line]:
    """
    A line through endpoints of two segments that crosses none of them and
    has segments on both sides; lines along a hull edge are rejected early.
    """
    segments = list(segments)
    _require_vertical(segments)
    if len(segments) < 2:
        return None
    if len({seg.p.x for seg in segments}) == 1:
        ledger.charge(steps=len(segments) * 2)
        return _same_x_separator(segments)

    hull = convex_hull([p for seg in segments for p in (seg.p, seg.q)], ledger)
    hull_lines = {Line.through(a, b) for a, b in zip(hull, hull[1:] + hull[:1]) if a != b}

    def splits(x: Point) -> bool:
        line = dual_of_point(x)
        return line not in hull_lines and separates(line, segments)

    objects = [dual_of_segment(seg) for seg in segments]
    found = GeneralCovering(objects, splits, eps, mode, ledger, rng, settings).solve()
    return dual_of_point(found) if found is not None else None
