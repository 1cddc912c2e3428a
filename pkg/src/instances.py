"""
Problem instances: JSON Lines codec, planted/unplanted generators, and
dispatch to the solvers and their brute-force oracles.
"""

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .covering import (
    CoveringInstance, solve_general_covering, solve_point_covering, solve_segment_separator,
    solve_strips_cover_box, solve_triangles_cover_triangle, solve_visibility_between_segments,
)
from .geometry_core import (
    Angle, Box, HalfPlane, Line, LineBundle, Location, Point, Segment, Strip, Triangle,
    classify_point, dual_of_line, format_scalar, to_scalar,
)
from .oracles import (
    OracleReport, oracle_3sum, oracle_collinear_points, oracle_coverage,
    oracle_general_covering, oracle_point_on_3_lines, oracle_sightlines,
)
from .quantum_model import CostLedger, ExecMode, solve_3sum
from .settings_manager import SolverSettings
from .solvers import solve_3_points_on_line, solve_point_on_3_lines

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
_INTERCEPT_CAP = 2 ** 30 - 1


class InstanceFormatError(ValueError):
    """Raised for unreadable instance files."""


class GenerationError(RuntimeError):
    """Raised when a generator cannot produce a verified instance."""


class Problem(Enum):
    POINT_ON_3_LINES = "point-on-3-lines"
    THREE_POINTS_ON_LINE = "3-points-on-line"
    GENERAL_COVERING = "general-covering"
    STRIPS_COVER_BOX = "strips-cover-box"
    TRIANGLES_COVER_TRIANGLE = "triangles-cover-triangle"
    POINT_COVERING = "point-covering"
    VISIBILITY = "visibility"
    SEGMENT_SEPARATOR = "segment-separator"
    THREE_SUM = "3sum"


MIN_SIZE = {
    Problem.POINT_ON_3_LINES: 3,
    Problem.THREE_POINTS_ON_LINE: 3,
    Problem.GENERAL_COVERING: 2,
    Problem.STRIPS_COVER_BOX: 1,
    Problem.TRIANGLES_COVER_TRIANGLE: 1,
    Problem.POINT_COVERING: 2,
    Problem.VISIBILITY: 1,
    Problem.SEGMENT_SEPARATOR: 2,
    Problem.THREE_SUM: 3,
}


@dataclass
class Instance:
    problem: Problem
    objects: List[Any]
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    planted: Optional[bool] = None
    verified: Optional[bool] = None
    version: int = FORMAT_VERSION

    @property
    def n(self) -> int:
        return len(self.objects)


# --- codec -----------------------------------------------------------------

def _pair(p: Point) -> List[str]:
    return [format_scalar(p.x), format_scalar(p.y)]


def _unpair(values) -> Point:
    return Point(to_scalar(values[0]), to_scalar(values[1]))


def encode_object(obj) -> Dict[str, Any]:
    if isinstance(obj, bool):
        raise InstanceFormatError(f"Cannot encode {obj!r}")
    if isinstance(obj, int):
        return {"type": "int", "value": obj}
    if isinstance(obj, Line):
        if obj.vertical:
            return {"type": "line", "x0": format_scalar(obj.x0)}
        return {"type": "line", "a": format_scalar(obj.a), "b": format_scalar(obj.b)}
    if isinstance(obj, Point):
        return {"type": "point", "xy": _pair(obj)}
    if isinstance(obj, Segment):
        return {"type": "segment", "p": _pair(obj.p), "q": _pair(obj.q)}
    if isinstance(obj, Strip):
        return {"type": "strip", "boundary1": encode_object(obj.boundary1),
                "boundary2": encode_object(obj.boundary2)}
    if isinstance(obj, Angle):
        return {"type": "angle", "boundary1": encode_object(obj.boundary1),
                "boundary2": encode_object(obj.boundary2),
                "side1": obj.side1, "side2": obj.side2, "double": obj.double}
    if isinstance(obj, HalfPlane):
        return {"type": "halfplane", "boundary": encode_object(obj.boundary), "side": obj.side}
    if isinstance(obj, Triangle):
        return {"type": "triangle", "vertices": [_pair(p) for p in obj.vertices]}
    if isinstance(obj, Box):
        return {"type": "box", "min": _pair(Point(obj.xmin, obj.ymin)),
                "max": _pair(Point(obj.xmax, obj.ymax))}
    raise InstanceFormatError(f"Cannot encode {type(obj).__name__}")


def decode_object(data: Dict[str, Any]):
    try:
        kind = data["type"]
        if kind == "int":
            return int(data["value"])
        if kind == "line":
            if "x0" in data:
                return Line.at_x(to_scalar(data["x0"]))
            return Line.non_vertical(to_scalar(data["a"]), to_scalar(data["b"]))
        if kind == "point":
            return _unpair(data["xy"])
        if kind == "segment":
            return Segment(_unpair(data["p"]), _unpair(data["q"]))
        if kind == "strip":
            return Strip(decode_object(data["boundary1"]), decode_object(data["boundary2"]))
        if kind == "angle":
            return Angle(decode_object(data["boundary1"]), decode_object(data["boundary2"]),
                         int(data["side1"]), int(data["side2"]), bool(data.get("double", False)))
        if kind == "halfplane":
            return HalfPlane(decode_object(data["boundary"]), int(data["side"]))
        if kind == "triangle":
            return Triangle(*(_unpair(v) for v in data["vertices"]))
        if kind == "box":
            low, high = _unpair(data["min"]), _unpair(data["max"])
            return Box(low.x, low.y, high.x, high.y)
    except (KeyError, TypeError, IndexError, ValueError) as e:
        raise InstanceFormatError(f"Malformed object record {data!r}: {e}") from e
    raise InstanceFormatError(f"Unknown object type {data.get('type')!r}")


def dumps_instance(inst: Instance) -> str:
    header = {
        "problem": inst.problem.value,
        "n": inst.n,
        "seed": inst.seed,
        "planted": inst.planted,
        "verified": inst.verified,
        "version": inst.version,
        "params": {key: encode_object(value) for key, value in inst.params.items()},
    }
    rows = [json.dumps(header, sort_keys=True)]
    rows += [json.dumps(encode_object(obj), sort_keys=True) for obj in inst.objects]
    return "\n".join(rows) + "\n"


def loads_instance(text: str) -> Instance:
    rows = [row for row in text.splitlines() if row.strip()]
    if not rows:
        raise InstanceFormatError("Empty instance")
    try:
        header = json.loads(rows[0])
        problem = Problem(header["problem"])
        records = [json.loads(row) for row in rows[1:]]
    except (json.JSONDecodeError, KeyError, ValueError) as e:
        raise InstanceFormatError(f"Bad instance header: {e}") from e
    if header.get("n") is not None and header["n"] != len(records):
        raise InstanceFormatError(f"Header announces {header['n']} objects, found {len(records)}")
    return Instance(
        problem=problem,
        objects=[decode_object(record) for record in records],
        params={key: decode_object(value) for key, value in header.get("params", {}).items()},
        seed=header.get("seed"),
        planted=header.get("planted"),
        verified=header.get("verified"),
        version=header.get("version", FORMAT_VERSION),
    )


def write_instance(inst: Instance, path: Path):
    Path(path).write_text(dumps_instance(inst), encoding="utf-8")


def read_instance(path: Path) -> Instance:
    try:
        return loads_instance(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InstanceFormatError(f"Cannot read {path}: {e}") from e


# --- generators --------------------------------------------------------------

def _ints(rng: np.random.Generator, low: int, high: int, size=None):
    return rng.integers(low, high + 1, size=size)


def _distinct(make: Callable[[], Any], count: int, taken: set, reject=None) -> List[Any]:
    out = []
    while len(out) < count:
        item = make()
        if item in taken or (reject is not None and reject(item)):
            continue
        taken.add(item)
        out.append(item)
    return out


def _shuffle(rng: np.random.Generator, items: List[Any]) -> List[Any]:
    return [items[i] for i in rng.permutation(len(items))]


def _line_spans(n: int, span: int) -> Tuple[int, int]:
    """Slope and intercept ranges for n random lines.

    Intercepts grow like n^3 so accidental concurrencies stay rare, capped
    where LineBundle leaves its int64 path.
    """
    return max(span, n), max(span * span, min(n ** 3, _INTERCEPT_CAP))


def _clear_concurrencies(lines: List[Line], keep: set, draw: Callable[[], Line],
                         max_parallel: Optional[int] = None) -> List[Line]:
    """Redraw lines outside ``keep`` until none meets two others at one point.

    With ``max_parallel`` set, no slope is shared by more lines than that.
    """
    limit = max_parallel or len(lines)
    slopes = Counter(line.a for line in lines)
    bundle = LineBundle(lines)
    crowded = [i for i, line in enumerate(lines)
               if i not in keep and (slopes[line.a] > limit or bundle.crossing_groups(line))]
    taken = set(lines)
    for i in crowded:
        others = LineBundle(lines[:i] + lines[i + 1:])
        if slopes[lines[i].a] <= limit and not others.crossing_groups(lines[i]):
            continue
        taken.discard(lines[i])
        slopes[lines[i].a] -= 1
        line = draw()
        while line in taken or slopes[line.a] >= limit or others.crossing_groups(line):
            line = draw()
        taken.add(line)
        slopes[line.a] += 1
        lines[i] = line
    if crowded:
        logger.debug(f"Redrew up to {len(crowded)} of {len(lines)} lines through shared crossings")
    return lines


def _gen_lines(rng, n, planted, span, max_parallel=None):
    slopes, intercepts = _line_spans(n, span)

    def draw() -> Line:
        return Line.non_vertical(int(_ints(rng, -slopes, slopes)),
                                 int(_ints(rng, -intercepts, intercepts)))

    taken: set = set()
    lines: List[Line] = []
    if planted:
        px, py = int(_ints(rng, -span, span)), int(_ints(rng, -span, span))
        picks = rng.choice(np.arange(-span, span + 1), size=3, replace=False)
        lines = [Line.non_vertical(int(a), py - int(a) * px) for a in picks]
        taken.update(lines)
    keep = set(range(len(lines)))
    lines += _distinct(draw, n - len(lines), taken)
    return _shuffle(rng, _clear_concurrencies(lines, keep, draw, max_parallel)), {}


def _gen_points(rng, n, planted, span):
    # collinear points are the duals of concurrent lines, or of three parallels
    lines, params = _gen_lines(rng, n, planted, span, max_parallel=2)
    return [dual_of_line(line) for line in lines], params


def _random_strip(rng, size=20) -> Strip:
    a, b = int(_ints(rng, -3, 3)), int(_ints(rng, -3 * size, 3 * size))
    width = int(_ints(rng, 1, size // 2))
    return Strip(Line.non_vertical(a, b), Line.non_vertical(a, b + width))


def _random_triangle(rng, size=20) -> Triangle:
    while True:
        pts = [Point(int(_ints(rng, -size // 2, size + size // 2)),
                     int(_ints(rng, -size // 2, size + size // 2))) for _ in range(3)]
        if len(set(pts)) == 3 and (pts[1].x - pts[0].x) * (pts[2].y - pts[0].y) \
                != (pts[1].y - pts[0].y) * (pts[2].x - pts[0].x):
            return Triangle(*pts)


def _clear_of(q: Point):
    return lambda obj: classify_point(q, obj) is not Location.EXTERIOR


def _gen_strips_cover_box(rng, n, planted, size=20):
    box = Box(0, 0, size, size)
    taken: set = set()
    if planted:
        q = Point(Fraction(int(_ints(rng, 1, 2 * size - 1)), 2),
                  Fraction(int(_ints(rng, 1, 2 * size - 1)), 2))
        strips = _distinct(lambda: _random_strip(rng, size), n, taken, _clear_of(q))
        return _shuffle(rng, strips), {"box": box}
    slope = int(_ints(rng, -2, 2))
    reach = abs(slope) * size + size + 1
    cover = max(1, n // 3)
    cuts = sorted(int(c) for c in _ints(rng, -reach, reach, size=cover - 1)) if cover > 1 else []
    edges = [-reach - 1] + cuts + [reach + 1]
    strips = []
    for low, high in zip(edges, edges[1:]):
        strip = Strip(Line.non_vertical(slope, low - 1), Line.non_vertical(slope, high + 1))
        if strip not in taken:
            taken.add(strip)
            strips.append(strip)
    strips += _distinct(lambda: _random_strip(rng, size), n - len(strips), taken)
    return _shuffle(rng, strips), {"box": box}


def _gen_triangles(rng, n, planted, size=20):
    target = Triangle(Point(0, 0), Point(size, 0), Point(0, size))
    taken: set = set()
    if planted:
        q = Point(Fraction(int(_ints(rng, 1, size - 2)), 2), Fraction(int(_ints(rng, 1, size - 2)), 2))
        tris = _distinct(lambda: _random_triangle(rng, size), n, taken, _clear_of(q))
        return _shuffle(rng, tris), {"target": target}
    centre = Point(Fraction(size, 3), Fraction(size, 4))
    verts = target.vertices
    tris = [Triangle(centre, verts[i], verts[(i + 1) % 3]) for i in range(min(3, n))]
    if n < 3:
        tris = [target] + tris[:n - 1]
    taken.update(tris)
    tris += _distinct(lambda: _random_triangle(rng, size), n - len(tris), taken)
    return _shuffle(rng, tris), {"target": target}


def _random_halfplane(rng, size=20) -> HalfPlane:
    line = Line.non_vertical(int(_ints(rng, -3, 3)), int(_ints(rng, -size, size)))
    return HalfPlane(line, int(rng.choice([1, -1])))


def _gen_point_covering(rng, n, planted, size=20):
    # the disjoint pairs below need 2 * (n - t + 1) <= n
    t = int(_ints(rng, min(n, (n + 3) // 2), n))
    if planted:
        q = Point(int(_ints(rng, -size, size)), int(_ints(rng, -size, size)))
        planes = []
        for _ in range(t):
            h = _random_halfplane(rng, size)
            planes.append(h if h.boundary.side_of(q) * h.side >= 0 else HalfPlane(h.boundary, -h.side))
        planes += [_random_halfplane(rng, size) for _ in range(n - t)]
        return _shuffle(rng, planes), {"t": t}
    pairs = n - t + 1
    planes = []
    for _ in range(pairs):
        a, b = int(_ints(rng, -3, 3)), int(_ints(rng, -size, size))
        planes += [HalfPlane(Line.non_vertical(a, b + 1), 1), HalfPlane(Line.non_vertical(a, b), -1)]
    planes += [_random_halfplane(rng, size) for _ in range(n - 2 * pairs)]
    return _shuffle(rng, planes), {"t": t}


def _vertical(x, y1, y2) -> Segment:
    return Segment(Point(x, y1), Point(x, y2))


def _random_vertical(rng, xs, size=20) -> Segment:
    low = int(_ints(rng, -size, size))
    return _vertical(int(rng.choice(xs)), low, low + int(_ints(rng, 1, size // 2)))


def _gen_visibility(rng, n, planted, size=20):
    s1 = _vertical(0, int(_ints(rng, -size // 2, 0)), int(_ints(rng, 1, size // 2)))
    s2 = _vertical(size, int(_ints(rng, -size // 2, 0)), int(_ints(rng, 1, size // 2)))
    xs = np.arange(1, size)
    taken: set = set()
    if planted:
        sight = Line.through(Point(0, s1.low.y), Point(size, s2.high.y))
        obstacles = _distinct(lambda: _random_vertical(rng, xs, size), n, taken,
                              lambda seg: seg.meets(sight))
        return _shuffle(rng, obstacles), {"s1": s1, "s2": s2}
    wall = _vertical(size // 2, -4 * size, 4 * size)
    taken.add(wall)
    obstacles = [wall] + _distinct(lambda: _random_vertical(rng, xs, size), n - 1, taken)
    return _shuffle(rng, obstacles), {"s1": s1, "s2": s2}


def _gen_separator(rng, n, planted, size=20):
    taken: set = set()
    if planted:
        xs = np.arange(-size, size + 1)
        cut = Line.non_vertical(int(_ints(rng, -2, 2)), int(_ints(rng, -size, size)))
        segs = _distinct(lambda: _random_vertical(rng, xs, size), n, taken,
                         lambda seg: seg.meets(cut))
        if len({cut.side_of(seg.p) for seg in segs}) < 2:
            segs[0] = _vertical(segs[0].p.x, cut.point_at(segs[0].p.x).y + 1,
                                cut.point_at(segs[0].p.x).y + 3)
            segs[-1] = _vertical(segs[-1].p.x, cut.point_at(segs[-1].p.x).y - 3,
                                 cut.point_at(segs[-1].p.x).y - 1)
        return _shuffle(rng, segs), {}
    # one abscissa and a connected stack of overlapping intervals; any two
    # distinct abscissae already admit a separator
    segs, low = [], int(_ints(rng, -size, 0))
    for _ in range(n):
        high = low + int(_ints(rng, 2, 6))
        segs.append(_vertical(0, low, high))
        low = int(_ints(rng, low + 1, high - 1))
    return _shuffle(rng, segs), {}


def _gen_general_covering(rng, n, planted, size=20):
    box = Box(0, 0, size, size)
    taken: set = set()
    if planted:
        q = Point(int(_ints(rng, 1, size - 1)), int(_ints(rng, 1, size - 1)))
        first = Strip(Line.non_vertical(1, q.y - q.x), Line.non_vertical(1, q.y - q.x + 2))
        second = Strip(Line.non_vertical(-1, q.y + q.x), Line.non_vertical(-1, q.y + q.x - 3))
        objects = [first, second][:n]
        taken.update(objects)

        def make():
            if rng.random() < 0.5:
                return _random_strip(rng, size)
            apex = Point(int(_ints(rng, -size, 2 * size)), int(_ints(rng, -size, 2 * size)))
            a1, a2 = rng.choice(np.arange(-3, 4), size=2, replace=False)
            return Angle(Line.non_vertical(int(a1), apex.y - int(a1) * apex.x),
                         Line.non_vertical(int(a2), apex.y - int(a2) * apex.x),
                         int(rng.choice([1, -1])), int(rng.choice([1, -1])))

        objects += _distinct(make, n - len(objects), taken, _clear_of(q))
        return _shuffle(rng, objects), {"box": box}
    blanket = Strip(Line.non_vertical(0, -1), Line.non_vertical(0, size + 1))
    taken.add(blanket)
    objects = [blanket] + _distinct(lambda: _random_strip(rng, size), n - 1, taken)
    return _shuffle(rng, objects), {"box": box}


def _gen_3sum(rng, n, planted, span):
    big = span * span
    values = [2 * int(v) + 1 for v in _ints(rng, -big // 2, big // 2, size=n)]
    if planted:
        a, b = 2 * int(_ints(rng, -big // 4, big // 4)), 2 * int(_ints(rng, -big // 4, big // 4))
        values[:3] = [a, b, -(a + b)]
    return _shuffle(rng, values), {}


GENERATORS = {
    Problem.POINT_ON_3_LINES: lambda rng, n, planted, s: _gen_lines(rng, n, planted, s.coefficient_range),
    Problem.THREE_POINTS_ON_LINE: lambda rng, n, planted, s: _gen_points(rng, n, planted, s.coefficient_range),
    Problem.GENERAL_COVERING: lambda rng, n, planted, s: _gen_general_covering(rng, n, planted),
    Problem.STRIPS_COVER_BOX: lambda rng, n, planted, s: _gen_strips_cover_box(rng, n, planted),
    Problem.TRIANGLES_COVER_TRIANGLE: lambda rng, n, planted, s: _gen_triangles(rng, n, planted),
    Problem.POINT_COVERING: lambda rng, n, planted, s: _gen_point_covering(rng, n, planted),
    Problem.VISIBILITY: lambda rng, n, planted, s: _gen_visibility(rng, n, planted),
    Problem.SEGMENT_SEPARATOR: lambda rng, n, planted, s: _gen_separator(rng, n, planted),
    Problem.THREE_SUM: lambda rng, n, planted, s: _gen_3sum(rng, n, planted, s.coefficient_range),
}

# generators whose construction settles the answer at any n: concurrencies
# are rejected exactly, and unplanted 3SUM values are all odd
SELF_CHECKED = frozenset({Problem.POINT_ON_3_LINES, Problem.THREE_POINTS_ON_LINE, Problem.THREE_SUM})


def oracle_cap(problem: Problem, settings: SolverSettings) -> int:
    if problem in (Problem.POINT_ON_3_LINES, Problem.THREE_POINTS_ON_LINE):
        return settings.oracle_line_cap
    if problem in (Problem.VISIBILITY, Problem.SEGMENT_SEPARATOR):
        return settings.oracle_sightline_cap
    if problem is Problem.THREE_SUM:
        return settings.oracle_3sum_cap
    return settings.oracle_coverage_cap


def gen_instance(problem: Problem, n: int, planted: bool, seed: int,
                 settings: Optional[SolverSettings] = None) -> Instance:
    """
    Generate a planted (positive) or unplanted (negative) instance.

    Instances within the oracle cap are checked by the oracle and
    regenerated on disagreement. Larger ones are verified when their
    generator settles the answer by construction, unverified otherwise.

    Raises:
        GenerationError: If no verified instance appears within the retry budget
    """
    settings = settings or SolverSettings()
    problem = Problem(problem)
    if n < MIN_SIZE[problem]:
        raise GenerationError(f"{problem.value} needs n >= {MIN_SIZE[problem]}, got {n}")
    rng = np.random.default_rng(seed)
    checkable = n <= oracle_cap(problem, settings)

    for attempt in range(settings.generator_retries):
        objects, params = GENERATORS[problem](rng, n, planted, settings)
        inst = Instance(problem, objects, params, seed=seed, planted=planted)
        if not checkable:
            inst.verified = True if problem in SELF_CHECKED else None
            return inst
        report = oracle_instance(inst, settings)
        if report.positive == planted:
            inst.verified = True
            return inst
        logger.debug(f"Regenerating {problem.value} n={n} (attempt {attempt + 1})")
    raise GenerationError(f"No verified {problem.value} instance after "
                          f"{settings.generator_retries} attempts")


# --- dispatch ---------------------------------------------------------------

@dataclass
class SolveOutcome:
    found: bool
    witness: Any = None

    def describe(self) -> str:
        if not self.found:
            return "not found"
        return f"found: {self.witness}"


def _in_box(box: Box) -> Callable[[Point], bool]:
    return box.contains


def solve_instance(inst: Instance, eps: float, mode: ExecMode, ledger: CostLedger,
                   rng: np.random.Generator, settings: Optional[SolverSettings] = None) -> SolveOutcome:
    """Run the solver matching the instance problem; found means a witness exists."""
    p, objs, params = inst.problem, inst.objects, inst.params
    if p is Problem.POINT_ON_3_LINES:
        w = solve_point_on_3_lines(objs, eps, mode, ledger, rng, settings)
    elif p is Problem.THREE_POINTS_ON_LINE:
        w = solve_3_points_on_line(objs, eps, mode, ledger, rng, settings)
    elif p is Problem.GENERAL_COVERING:
        box = params.get("box")
        predicate = _in_box(box) if box is not None else (lambda x: True)
        w = solve_general_covering(CoveringInstance(objs, predicate), eps, mode, ledger, rng, settings)
    elif p is Problem.STRIPS_COVER_BOX:
        result = solve_strips_cover_box(objs, params["box"], eps, mode, ledger, rng, settings)
        w = result.witness
    elif p is Problem.TRIANGLES_COVER_TRIANGLE:
        result = solve_triangles_cover_triangle(objs, params["target"], eps, mode, ledger, rng, settings)
        w = result.witness
    elif p is Problem.POINT_COVERING:
        w = solve_point_covering(objs, params["t"], eps, mode, ledger, rng, settings)
    elif p is Problem.VISIBILITY:
        w = solve_visibility_between_segments(objs, params["s1"], params["s2"], eps, mode,
                                              ledger, rng, settings)
    elif p is Problem.SEGMENT_SEPARATOR:
        w = solve_segment_separator(objs, eps, mode, ledger, rng, settings)
    else:
        w = solve_3sum(objs, mode, ledger)
    return SolveOutcome(w is not None, w)


def oracle_instance(inst: Instance, settings: Optional[SolverSettings] = None) -> OracleReport:
    """Brute-force answer for an instance; positive means a witness exists."""
    settings = settings or SolverSettings()
    cap = oracle_cap(inst.problem, settings)
    p, objs, params = inst.problem, inst.objects, inst.params
    if p is Problem.POINT_ON_3_LINES:
        return oracle_point_on_3_lines(objs, cap)
    if p is Problem.THREE_POINTS_ON_LINE:
        return oracle_collinear_points(objs, cap)
    if p is Problem.GENERAL_COVERING:
        box = params.get("box")
        return oracle_general_covering(objs, _in_box(box) if box is not None else (lambda x: True), cap)
    if p is Problem.STRIPS_COVER_BOX:
        return oracle_coverage(objs, "box", target=params["box"], cap=cap)
    if p is Problem.TRIANGLES_COVER_TRIANGLE:
        return oracle_coverage(objs, "triangle", target=params["target"], cap=cap)
    if p is Problem.POINT_COVERING:
        return oracle_coverage(objs, "depth", t=params["t"], cap=cap)
    if p is Problem.VISIBILITY:
        return oracle_sightlines(objs, params["s1"], params["s2"], cap=cap)
    if p is Problem.SEGMENT_SEPARATOR:
        return oracle_sightlines(objs, separator=True, cap=cap)
    return oracle_3sum(objs, cap)
