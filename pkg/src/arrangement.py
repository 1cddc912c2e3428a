"""
Line arrangements clipped to a box and their triangulation into regions.

Faces are traced from a half-edge structure: every line (and every side of
the clip box) is cut at its crossings, outgoing edges are sorted by exact
angle around each vertex, and each face is walked keeping it on the left.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry_core import (
    Box, GeometryError, IntersectionKind, Line, OutOfRangeError, Point,
    PointBatch, intersect, sign,
)

logger = logging.getLogger(__name__)

# Supporting-line ids of the clip box sides
BOX_BOTTOM, BOX_RIGHT, BOX_TOP, BOX_LEFT = -1, -2, -3, -4
BOX_SIDES = (BOX_BOTTOM, BOX_RIGHT, BOX_TOP, BOX_LEFT)


class ArrangementError(GeometryError):
    """Raised when lines cannot be arranged inside the given box."""


def compute_clip_box(lines: Sequence[Line], extra_margin=1,
                     include: Sequence[Point] = ()) -> Box:
    """
    Square box strictly containing every pairwise crossing of ``lines``.

    The half-width comes from the data: crossing abscissae are bounded by the
    intercept spread over the smallest slope gap, ordinates by the largest
    slope times that plus the largest intercept. For reduced rationals with
    numerators <= N and denominators <= D this never exceeds the coefficient
    bound 2*N*D^2 on x.

    Args:
        lines: Lines to enclose (at least one)
        extra_margin: Positive slack added to the bound
        include: Extra points that must lie strictly inside as well

    Returns:
        Box: Square box centred at the origin
    """
    if not lines:
        raise ArrangementError("compute_clip_box needs at least one line")
    margin = Fraction(extra_margin)
    if margin <= 0:
        raise ArrangementError("extra_margin must be positive")

    slanted = [line for line in lines if not line.vertical]
    uprights = [line.x0 for line in lines if line.vertical]

    x_bound = max((abs(x0) for x0 in uprights), default=Fraction(0))
    slopes = sorted({line.a for line in slanted})
    if len(slopes) >= 2:
        gap = min(hi - lo for lo, hi in zip(slopes, slopes[1:]))
        intercepts = [line.b for line in slanted]
        x_bound = max(x_bound, (max(intercepts) - min(intercepts)) / gap)
    max_slope = max((abs(line.a) for line in slanted), default=Fraction(0))
    max_intercept = max((abs(line.b) for line in slanted), default=Fraction(0))
    y_bound = max_slope * x_bound + max_intercept

    half = max(x_bound, y_bound)
    for p in include:
        half = max(half, abs(p.x), abs(p.y))
    half += margin
    return Box(-half, -half, half, half)


@dataclass
class Face:
    vertices: Tuple[int, ...]
    labels: Tuple[int, ...]  # supporting line of edge vertices[i] -> vertices[i + 1]


@dataclass
class Arrangement:
    lines: List[Line]
    clip_box: Box
    vertices: List[Point]
    edges: List[Tuple[int, int, int]]
    faces: List[Face]

    def euler_characteristic(self) -> int:
        """V - E + F with the discarded outer face counted back in."""
        return len(self.vertices) - len(self.edges) + len(self.faces) + 1

    def is_convex(self, face: Face) -> bool:
        pts = [self.vertices[v] for v in face.vertices]
        count = len(pts)
        for i in range(count):
            p, q, r = pts[i], pts[(i + 1) % count], pts[(i + 2) % count]
            if _cross(p, q, r) <= 0:
                return False
        return True


def _cross(p: Point, q: Point, r: Point) -> Fraction:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def angular_key(origin: Point):
    """Sort key ordering points counter-clockwise around origin from the +x direction."""
    def half(p: Point) -> int:
        dx, dy = p.x - origin.x, p.y - origin.y
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(p: Point, q: Point) -> int:
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        return -sign(_cross(origin, p, q))

    return cmp_to_key(compare)


def build_arrangement(lines: Sequence[Line], box: Box, ledger=None,
                      depth: int = 0) -> Arrangement:
    """
    Subdivide ``box`` by ``lines`` in a single pass.

    There is no per-insertion state: building a prefix of ``lines`` gives the
    arrangement an incremental insertion would hold at that point.

    Args:
        lines: Distinct lines whose pairwise crossings lie strictly inside box
        box: Clip box
        ledger: Optional cost ledger charged k^2 classical steps
        depth: Recursion depth recorded with the charge

    Returns:
        Arrangement: Vertices, labelled edges and counter-clockwise faces
    """
    lines = list(lines)
    if len(set(lines)) != len(lines):
        raise ArrangementError("Duplicate lines in arrangement input")

    supports: Dict[int, Line] = dict(enumerate(lines))
    supports.update(zip(BOX_SIDES, box.side_lines()))
    on_support: Dict[int, set] = {sid: set() for sid in supports}

    for sid, corner in zip(BOX_SIDES, box.corners()):
        # corner i lies on side i and on the side before it
        on_support[sid].add(corner)
        on_support[BOX_SIDES[BOX_SIDES.index(sid) - 1]].add(corner)

    for i, line in enumerate(lines):
        hits = set()
        for sid in BOX_SIDES:
            meet = intersect(line, supports[sid])
            if meet.kind is IntersectionKind.POINT and box.contains(meet.point):
                hits.add(meet.point)
                on_support[sid].add(meet.point)
        if len(hits) < 2:
            raise ArrangementError(f"Line {line} does not cross the clip box")
        on_support[i] |= hits

    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            meet = intersect(lines[i], lines[j])
            if meet.kind is not IntersectionKind.POINT:
                continue
            if not box.strictly_contains(meet.point):
                raise ArrangementError(
                    f"Crossing {meet.point} of {lines[i]} and {lines[j]} is outside the clip box")
            on_support[i].add(meet.point)
            on_support[j].add(meet.point)

    points = sorted(set().union(*on_support.values()))
    index = {p: vid for vid, p in enumerate(points)}

    edges: List[Tuple[int, int, int]] = []
    outgoing: Dict[int, List[Tuple[int, int]]] = {vid: [] for vid in range(len(points))}
    for sid, members in on_support.items():
        chain = [index[p] for p in sorted(members)]
        for u, v in zip(chain, chain[1:]):
            edges.append((u, v, sid))
            outgoing[u].append((v, sid))
            outgoing[v].append((u, sid))

    position: Dict[Tuple[int, int], int] = {}
    for u, out in outgoing.items():
        key = angular_key(points[u])
        out.sort(key=lambda item: key(points[item[0]]))
        for pos, (v, _) in enumerate(out):
            position[(u, v)] = pos

    faces: List[Face] = []
    seen = set()
    outer = 0
    for start in position:
        if start in seen:
            continue
        cycle, labels = [], []
        u, v = start
        while (u, v) not in seen:
            seen.add((u, v))
            cycle.append(u)
            out_v = outgoing[v]
            labels.append(out_v[position[(v, u)]][1])
            u, v = v, out_v[(position[(v, u)] - 1) % len(out_v)][0]
        area = sum(points[a].x * points[b].y - points[b].x * points[a].y
                   for a, b in zip(cycle, cycle[1:] + cycle[:1]))
        if area <= 0:
            outer += 1
            continue
        faces.append(Face(tuple(cycle), tuple(labels)))

    if outer != 1:
        raise ArrangementError(f"Expected one outer cycle, traced {outer}")

    if ledger is not None:
        ledger.charge(steps=len(lines) ** 2, depth=depth)
    logger.debug(f"Arrangement of {len(lines)} lines: V={len(points)} "
                 f"E={len(edges)} F={len(faces)}")
    return Arrangement(lines, box, points, edges, faces)


@dataclass(frozen=True)
class Region:
    """Triangle of a triangulated face; labels are None on fan diagonals."""
    id: int
    vertices: Tuple[int, int, int]
    labels: Tuple[Optional[int], Optional[int], Optional[int]]
    face: int

    @property
    def supporting_lines(self) -> Tuple[int, ...]:
        return tuple(sorted({lab for lab in self.labels if lab is not None and lab >= 0}))

    @property
    def segment_count(self) -> int:
        """Bounding segments not lying on the clip box."""
        return sum(1 for lab in self.labels if lab is None or lab >= 0)


@dataclass
class RegionSet:
    arrangement: Arrangement
    regions: List[Region] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.regions)

    @property
    def clip_box(self) -> Box:
        return self.arrangement.clip_box

    def points(self, region: Region) -> Tuple[Point, Point, Point]:
        verts = self.arrangement.vertices
        return tuple(verts[v] for v in region.vertices)

    def area(self, region: Region) -> Fraction:
        p, q, r = self.points(region)
        return _cross(p, q, r) / 2

    def total_area(self) -> Fraction:
        return sum((self.area(region) for region in self.regions), Fraction(0))

    @cached_property
    def vertex_batch(self) -> PointBatch:
        return PointBatch(self.arrangement.vertices)

    @cached_property
    def _homogeneous(self) -> List[Tuple[Tuple[int, int, int], ...]]:
        verts = self.arrangement.vertices
        return [tuple(verts[v].homogeneous for v in region.vertices)
                for region in self.regions]


def triangulate(arr: Arrangement) -> RegionSet:
    """
    Fan-triangulate every face from its lexicographically smallest vertex.

    Vertex ids follow the lexicographic order of the points, so the smallest
    id is the fan apex.
    """
    rs = RegionSet(arr)
    for face_id, face in enumerate(arr.faces):
        count = len(face.vertices)
        start = face.vertices.index(min(face.vertices))
        verts = face.vertices[start:] + face.vertices[:start]
        labels = face.labels[start:] + face.labels[:start]
        for i in range(1, count - 1):
            rs.regions.append(Region(
                id=len(rs.regions),
                vertices=(verts[0], verts[i], verts[i + 1]),
                labels=(labels[0] if i == 1 else None,
                        labels[i],
                        labels[count - 1] if i == count - 2 else None),
                face=face_id,
            ))

    k = len(arr.lines)
    if k >= 2 and len(rs.regions) > 2 * k * k:
        raise ArrangementError(f"{len(rs.regions)} regions exceed 2k^2 for k={k}")
    return rs


def _orient_h(p, q, r) -> int:
    (px, py, pw), (qx, qy, qw), (rx, ry, rw) = p, q, r
    det = (px * (qy * rw - qw * ry) - py * (qx * rw - qw * rx)
           + pw * (qx * ry - qy * rx))
    return sign(det)


def locate(rs: RegionSet, x: Point) -> List[int]:
    """
    Ids of every region whose closure contains ``x``.

    Raises:
        OutOfRangeError: If x is outside the clip box
    """
    if not rs.clip_box.contains(x):
        raise OutOfRangeError(f"{x} is outside the clip box")
    hx = x.homogeneous
    found = []
    for region, (a, b, c) in zip(rs.regions, rs._homogeneous):
        if (_orient_h(a, b, hx) >= 0 and _orient_h(b, c, hx) >= 0
                and _orient_h(c, a, hx) >= 0):
            found.append(region.id)
    return found


def dump_arrangement(arr: Arrangement) -> str:
    """One record per line: ``V id x y``, ``E u v line``, ``F id v...``."""
    rows = [f"V {vid} {p.x} {p.y}" for vid, p in enumerate(arr.vertices)]
    rows += [f"E {u} {v} {label}" for u, v, label in arr.edges]
    rows += [f"F {fid} " + " ".join(map(str, face.vertices))
             for fid, face in enumerate(arr.faces)]
    return "\n".join(rows) + "\n"
