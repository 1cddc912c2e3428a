"""
Brute-force reference answers for every problem.

These only use exact primitives and, for coverage, the full arrangement;
none of the recursive solver code is involved.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence

from .arrangement import build_arrangement, compute_clip_box
from .geometry_core import (
    IntersectionKind, Line, Location, Point, Segment,
    classify_point, intersect, orientation,
)

logger = logging.getLogger(__name__)


class OracleCapExceeded(ValueError):
    """Raised when an instance is too large for a brute-force oracle."""


@dataclass
class OracleReport:
    positive: bool
    witness: Any = None
    steps: int = 0


def _check_cap(n: int, cap: Optional[int], name: str):
    if cap is not None and n > cap:
        raise OracleCapExceeded(f"{name} refuses n={n} above cap {cap}")
    logger.debug(f"Running {name} on n={n}")


def oracle_point_on_3_lines(lines: Sequence[Line], cap: Optional[int] = 60) -> OracleReport:
    """All pairwise crossings keyed by exact point; three incident lines is a hit."""
    lines = list(lines)
    _check_cap(len(lines), cap, "oracle_point_on_3_lines")
    incident: Dict[Point, set] = {}
    equal: Dict[Line, List[int]] = {}
    steps = 0
    for i, j in combinations(range(len(lines)), 2):
        steps += 1
        meet = intersect(lines[i], lines[j])
        if meet.kind is IntersectionKind.COINCIDENT:
            equal.setdefault(lines[i], [i]).append(j)
        elif meet.kind is IntersectionKind.POINT:
            incident.setdefault(meet.point, set()).update((i, j))

    for line, group in equal.items():
        members = sorted(set(group))
        if len(members) >= 3:
            return OracleReport(True, (tuple(members[:3]), line.point_at(0)), steps)
        for other in range(len(lines)):
            meet = intersect(line, lines[other])
            if meet.kind is IntersectionKind.POINT:
                return OracleReport(True, ((members[0], members[1], other), meet.point), steps)

    hits = sorted((p, ids) for p, ids in incident.items() if len(ids) >= 3)
    if hits:
        point, ids = hits[0]
        return OracleReport(True, (tuple(sorted(ids)[:3]), point), steps)
    return OracleReport(False, None, steps)


def oracle_collinear_points(points: Sequence[Point], cap: Optional[int] = 60) -> OracleReport:
    points = list(points)
    _check_cap(len(points), cap, "oracle_collinear_points")
    steps = 0
    for i, j, l in combinations(range(len(points)), 3):
        steps += 1
        if orientation(points[i], points[j], points[l]) == 0:
            return OracleReport(True, (i, j, l), steps)
    return OracleReport(False, None, steps)


def _samples(lines: List[Line], include: Sequence[Point]) -> List[Point]:
    """Vertices, edge midpoints and face centroids of the clipped arrangement."""
    box = compute_clip_box(lines, extra_margin=2, include=include)
    arr = build_arrangement(lines, box)
    samples = list(arr.vertices)
    for u, v, _ in arr.edges:
        p, q = arr.vertices[u], arr.vertices[v]
        samples.append(Point((p.x + q.x) / 2, (p.y + q.y) / 2))
    for face in arr.faces:
        count = len(face.vertices)
        samples.append(Point(sum((arr.vertices[v].x for v in face.vertices), Fraction(0)) / count,
                             sum((arr.vertices[v].y for v in face.vertices), Fraction(0)) / count))
    return samples


def oracle_coverage(objects: Sequence, mode: str, target=None, t: Optional[int] = None,
                    cap: Optional[int] = 40) -> OracleReport:
    """
    Exact coverage by sampling every cell of the full arrangement.

    Args:
        objects: Strips (box mode), triangles (triangle mode) or half-planes (depth mode)
        mode: ``box``, ``triangle`` or ``depth``
        target: Box or Triangle for the covering modes
        t: Depth threshold for depth mode
        cap: Largest accepted object count

    Returns:
        OracleReport: positive with an uncovered point (covering modes) or a
        point of depth >= t (depth mode)
    """
    objects = list(objects)
    _check_cap(len(objects), cap, "oracle_coverage")
    lines = list(dict.fromkeys(line for obj in objects for line in obj.boundary_lines()))

    if mode == "depth":
        if not lines:
            return OracleReport(False)
        samples = _samples(lines, ())
        for p in samples:
            depth = sum(1 for h in objects if h.boundary.side_of(p) * h.side >= 0)
            if depth >= t:
                return OracleReport(True, p, len(samples) * len(objects))
        return OracleReport(False, None, len(samples) * len(objects))

    if mode == "box":
        frame = list(target.side_lines())
        corners = target.corners()
        within = target.contains
    elif mode == "triangle":
        frame = list(target.boundary_lines())
        corners = target.vertices
        within = lambda p: classify_point(p, target) is not Location.EXTERIOR
    else:
        raise ValueError(f"Unknown coverage mode {mode!r}")

    lines = list(dict.fromkeys(lines + frame))
    samples = _samples(lines, corners)
    steps = 0
    for p in samples:
        if not within(p):
            continue
        steps += len(objects)
        if all(classify_point(p, obj) is Location.EXTERIOR for obj in objects):
            return OracleReport(True, p, steps)
    return OracleReport(False, None, steps)


def _crosses_open(line: Line, segment: Segment) -> bool:
    return line.side_of(segment.p) * line.side_of(segment.q) < 0


def _touches(line: Line, segment: Segment) -> bool:
    return line.side_of(segment.p) * line.side_of(segment.q) <= 0


def oracle_sightlines(segments: Sequence[Segment], s1: Optional[Segment] = None,
                      s2: Optional[Segment] = None, separator: bool = False,
                      cap: Optional[int] = 60) -> OracleReport:
    """
    Every candidate line through two endpoints, checked in full.

    Visibility mode wants a line meeting s1 and s2 that crosses no open
    obstacle strictly between them. Separator mode wants a line crossing no
    open segment with segments on both sides; horizontal lines through
    single endpoints are tried as well.
    """
    segments = list(segments)
    _check_cap(len(segments), cap, "oracle_sightlines")

    if separator:
        owners = [(p, idx) for idx, seg in enumerate(segments) for p in (seg.p, seg.q)]
        candidates = [Line.through(p, q) for (p, i), (q, j) in combinations(owners, 2)
                      if i != j and p.x != q.x]
        candidates += [Line.non_vertical(0, p.y) for p, _ in owners]
        blockers = segments
    else:
        left, right = sorted((s1.p.x, s2.p.x))
        blockers = [seg for seg in segments if left < seg.p.x < right]
        ends = [p for seg in blockers + [s1, s2] for p in (seg.p, seg.q)]
        candidates = [Line.through(p, q) for p, q in combinations(ends, 2) if p.x != q.x]

    steps = 0
    for line in dict.fromkeys(candidates):
        steps += len(blockers) + 2
        if any(_crosses_open(line, seg) for seg in blockers):
            continue
        if separator:
            sides = {line.side_of(seg.p) or line.side_of(seg.q) for seg in segments}
            if sides == {1, -1}:
                return OracleReport(True, line, steps)
        elif _touches(line, s1) and _touches(line, s2):
            return OracleReport(True, line, steps)
    return OracleReport(False, None, steps)


def oracle_3sum(values: Sequence[int], cap: Optional[int] = 200) -> OracleReport:
    values = [int(v) for v in values]
    _check_cap(len(values), cap, "oracle_3sum")
    steps = 0
    for i, j, l in combinations(range(len(values)), 3):
        steps += 1
        if values[i] + values[j] + values[l] == 0:
            return OracleReport(True, (i, j, l), steps)
    return OracleReport(False, None, steps)


def oracle_general_covering(objects: Sequence, predicate, cap: Optional[int] = 40) -> OracleReport:
    """Every crossing of two boundary lines, tested against every object."""
    objects = list(objects)
    _check_cap(len(objects), cap, "oracle_general_covering")
    lines = list(dict.fromkeys(line for obj in objects for line in obj.boundary_lines()))
    steps = 0
    for first, second in combinations(lines, 2):
        meet = intersect(first, second)
        if meet.kind is not IntersectionKind.POINT:
            continue
        steps += len(objects)
        point = meet.point
        if predicate(point) and all(classify_point(point, obj) is not Location.INTERIOR
                                    for obj in objects):
            return OracleReport(True, point, steps)
    return OracleReport(False, None, steps)
