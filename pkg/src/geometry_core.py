"""
Exact geometric primitives for the plane-separation solvers.

Every coordinate is a ``fractions.Fraction``. Predicates work either on
fractions or on integer homogeneous forms derived from them, never on floats.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Scalar = Fraction

# int64 products below this bound cannot overflow after three additions
_INT64_SAFE = 2 ** 62
_COEFF_SAFE = 2 ** 30


class GeometryError(ValueError):
    """Base error for malformed geometric input."""


class MalformedInstanceError(GeometryError):
    """Raised when an instance violates a structural precondition."""


class NoDualError(GeometryError):
    """Raised when a vertical line is dualized."""


class OutOfRangeError(GeometryError):
    """Raised when a query point lies outside the clip box."""


def to_scalar(value: Union[int, str, Fraction]) -> Fraction:
    """Convert an int, a ``"num/den"`` string or a Fraction to a Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GeometryError(f"Not an exact scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise GeometryError(f"Cannot parse scalar {value!r}: {e}") from e
    raise GeometryError(f"Not an exact scalar: {value!r}")


def format_scalar(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def sign(value) -> int:
    return (value > 0) - (value < 0)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", to_scalar(self.x))
        object.__setattr__(self, "y", to_scalar(self.y))

    @cached_property
    def homogeneous(self) -> Tuple[int, int, int]:
        """Integer triple (X, Y, W) with W > 0 and (x, y) = (X/W, Y/W)."""
        w = _lcm(self.x.denominator, self.y.denominator)
        return (self.x.numerator * (w // self.x.denominator),
                self.y.numerator * (w // self.y.denominator),
                w)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Line:
    """Line y = a*x + b, or x = x0 when ``vertical`` is set.

    Unused fields are zeroed so that equality is structural on the
    canonical form.
    """
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    vertical: bool = False
    x0: Fraction = Fraction(0)

    def __post_init__(self):
        if self.vertical:
            object.__setattr__(self, "a", Fraction(0))
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "x0", to_scalar(self.x0))
        else:
            object.__setattr__(self, "a", to_scalar(self.a))
            object.__setattr__(self, "b", to_scalar(self.b))
            object.__setattr__(self, "x0", Fraction(0))

    @classmethod
    def non_vertical(cls, a, b) -> "Line":
        return cls(a=a, b=b)

    @classmethod
    def at_x(cls, x0) -> "Line":
        return cls(vertical=True, x0=x0)

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        if p == q:
            raise GeometryError(f"Cannot build a line through a single point {p}")
        if p.x == q.x:
            return cls.at_x(p.x)
        a = (q.y - p.y) / (q.x - p.x)
        return cls.non_vertical(a, p.y - a * p.x)

    @cached_property
    def coefficients(self) -> Tuple[int, int, int]:
        """Integers (A, B, C), positively scaled, with side = sign(A*x + B*y + C)."""
        if self.vertical:
            coeffs = (-self.x0.denominator, 0, self.x0.numerator)
        else:
            scale = _lcm(self.a.denominator, self.b.denominator)
            coeffs = (-self.a.numerator * (scale // self.a.denominator),
                      scale,
                      -self.b.numerator * (scale // self.b.denominator))
        g = gcd(gcd(abs(coeffs[0]), abs(coeffs[1])), abs(coeffs[2]))
        return tuple(c // g for c in coeffs)

    def side_of(self, p: Point) -> int:
        """+1 above (left of a vertical line), -1 below (right), 0 on the line."""
        big_a, big_b, big_c = self.coefficients
        x, y, w = p.homogeneous
        return sign(big_a * x + big_b * y + big_c * w)

    def contains(self, p: Point) -> bool:
        return self.side_of(p) == 0

    def is_parallel(self, other: "Line") -> bool:
        if self.vertical or other.vertical:
            return self.vertical and other.vertical
        return self.a == other.a

    def point_at(self, t) -> Point:
        """A point of the line parameterised by x (or by y when vertical)."""
        t = to_scalar(t)
        if self.vertical:
            return Point(self.x0, t)
        return Point(t, self.a * t + self.b)

    def __str__(self) -> str:
        if self.vertical:
            return f"x = {self.x0}"
        return f"y = {self.a}*x + {self.b}"


class IntersectionKind(Enum):
    POINT = "point"
    PARALLEL = "parallel"
    COINCIDENT = "coincident"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectionKind
    point: Optional[Point] = None


def intersect(l1: Line, l2: Line) -> Intersection:
    if l1 == l2:
        return Intersection(IntersectionKind.COINCIDENT)
    a1, b1, c1 = l1.coefficients
    a2, b2, c2 = l2.coefficients
    det = a1 * b2 - a2 * b1
    if det == 0:
        return Intersection(IntersectionKind.PARALLEL)
    return Intersection(IntersectionKind.POINT,
                        Point(Fraction(b1 * c2 - c1 * b2, det),
                              Fraction(c1 * a2 - a1 * c2, det)))


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p)."""
    return sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def concurrent(l1: Line, l2: Line, l3: Line) -> Optional[Point]:
    """Common point of three pairwise distinct lines, or None."""
    if len({l1, l2, l3}) < 3:
        raise MalformedInstanceError("concurrent() needs three distinct lines")
    meet = intersect(l1, l2)
    if meet.kind is IntersectionKind.POINT and l3.contains(meet.point):
        return meet.point
    return None


def dual_of_line(line: Line) -> Point:
    if line.vertical:
        raise NoDualError(f"Vertical line {line} has no dual point")
    return Point(line.a, -line.b)


def dual_of_point(p: Point) -> Line:
    return Line.non_vertical(p.x, -p.y)


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


Pattern = Tuple[int, ...]


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise GeometryError(f"Degenerate segment at {self.p}")

    @property
    def is_vertical(self) -> bool:
        return self.p.x == self.q.x

    @property
    def low(self) -> Point:
        return min(self.p, self.q, key=lambda pt: (pt.y, pt.x))

    @property
    def high(self) -> Point:
        return max(self.p, self.q, key=lambda pt: (pt.y, pt.x))

    def meets(self, line: Line) -> bool:
        """True when the line touches the closed segment."""
        return line.side_of(self.p) * line.side_of(self.q) <= 0

    def crosses_open(self, line: Line) -> bool:
        """True when the line passes through the relative interior."""
        sp, sq = line.side_of(self.p), line.side_of(self.q)
        return sp * sq < 0 or (sp == 0 and sq == 0)


@dataclass(frozen=True)
class Strip:
    boundary1: Line
    boundary2: Line

    def __post_init__(self):
        if self.boundary1 == self.boundary2 or not self.boundary1.is_parallel(self.boundary2):
            raise GeometryError("Strip boundaries must be parallel and distinct")

    def boundary_lines(self) -> Tuple[Line, ...]:
        return (self.boundary1, self.boundary2)

    def interior_patterns(self) -> FrozenSet[Pattern]:
        return frozenset({(1, -1), (-1, 1)})


@dataclass(frozen=True)
class Angle:
    """Wedge selected by strict sides of two non-parallel lines.

    With ``double`` set the opposite wedge belongs to the object as well;
    that is the shape a non-vertical segment dualizes to.
    """
    boundary1: Line
    boundary2: Line
    side1: int = 1
    side2: int = 1
    double: bool = False

    def __post_init__(self):
        if self.boundary1.is_parallel(self.boundary2):
            raise GeometryError("Angle boundaries must not be parallel")
        if self.side1 not in (1, -1) or self.side2 not in (1, -1):
            raise GeometryError("Angle sides must be +1 or -1")

    @property
    def apex(self) -> Point:
        return intersect(self.boundary1, self.boundary2).point

    def boundary_lines(self) -> Tuple[Line, ...]:
        return (self.boundary1, self.boundary2)

    def interior_patterns(self) -> FrozenSet[Pattern]:
        wedges = {(self.side1, self.side2)}
        if self.double:
            wedges.add((-self.side1, -self.side2))
        return frozenset(wedges)


@dataclass(frozen=True)
class HalfPlane:
    boundary: Line
    side: int = 1

    def __post_init__(self):
        if self.side not in (1, -1):
            raise GeometryError("Half-plane side must be +1 or -1")

    def boundary_lines(self) -> Tuple[Line, ...]:
        return (self.boundary,)

    def interior_patterns(self) -> FrozenSet[Pattern]:
        return frozenset({(self.side,)})


@dataclass(frozen=True)
class Triangle:
    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        if orientation(self.a, self.b, self.c) == 0:
            raise GeometryError(f"Collinear triangle {self.a}, {self.b}, {self.c}")

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)

    @cached_property
    def _edges(self) -> Tuple[Line, Line, Line]:
        return (Line.through(self.a, self.b), Line.through(self.b, self.c),
                Line.through(self.c, self.a))

    def boundary_lines(self) -> Tuple[Line, ...]:
        return self._edges

    def interior_patterns(self) -> FrozenSet[Pattern]:
        ab, bc, ca = self._edges
        return frozenset({(ab.side_of(self.c), bc.side_of(self.a), ca.side_of(self.b))})


@dataclass(frozen=True)
class GuideLine:
    """A line that covers nothing but whose crossings are candidate points."""
    line: Line

    def boundary_lines(self) -> Tuple[Line, ...]:
        return (self.line,)

    def interior_patterns(self) -> FrozenSet[Pattern]:
        return frozenset()


@dataclass(frozen=True)
class Box:
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction

    def __post_init__(self):
        for name in ("xmin", "ymin", "xmax", "ymax"):
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if self.xmin >= self.xmax or self.ymin >= self.ymax:
            raise GeometryError("Box must have positive area")

    @property
    def area(self) -> Fraction:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    def corners(self) -> Tuple[Point, Point, Point, Point]:
        """Counter-clockwise from the lower-left corner."""
        return (Point(self.xmin, self.ymin), Point(self.xmax, self.ymin),
                Point(self.xmax, self.ymax), Point(self.xmin, self.ymax))

    def side_lines(self) -> Tuple[Line, Line, Line, Line]:
        """Bottom, right, top, left."""
        return (Line.non_vertical(0, self.ymin), Line.at_x(self.xmax),
                Line.non_vertical(0, self.ymax), Line.at_x(self.xmin))

    def contains(self, p: Point) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def strictly_contains(self, p: Point) -> bool:
        return self.xmin < p.x < self.xmax and self.ymin < p.y < self.ymax


CoveringObject = Union[Strip, Angle, HalfPlane, Triangle, GuideLine]


def sign_vector(obj, p: Point) -> Pattern:
    return tuple(line.side_of(p) for line in obj.boundary_lines())


def classify_signs(signs: Pattern, patterns: FrozenSet[Pattern]) -> Location:
    if 0 not in signs:
        return Location.INTERIOR if signs in patterns else Location.EXTERIOR
    for pattern in patterns:
        if all(s == 0 or s == ps for s, ps in zip(signs, pattern)):
            return Location.BOUNDARY
    return Location.EXTERIOR


def classify_point(x: Point, obj: CoveringObject) -> Location:
    """Exact interior/boundary/exterior classification of x against obj."""
    return classify_signs(sign_vector(obj, x), obj.interior_patterns())


def dual_of_segment(segment: Segment) -> Union[Strip, Angle]:
    """Set of dual points whose lines meet the closed segment."""
    if segment.is_vertical:
        return Strip(dual_of_point(segment.low), dual_of_point(segment.high))
    return Angle(dual_of_point(segment.p), dual_of_point(segment.q), 1, -1, double=True)


class PointBatch:
    """Homogeneous integer coordinates of many points, ready for numpy."""

    def __init__(self, points: Sequence[Point]):
        self.points = list(points)
        hom = [p.homogeneous for p in self.points]
        self.max_abs = max((abs(v) for h in hom for v in h), default=0)
        self._exact = np.array(hom, dtype=object).reshape(-1, 3)
        self._fast: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.points)

    def columns(self, fast: bool):
        if fast:
            if self._fast is None:
                self._fast = self._exact.astype(np.int64)
            arr = self._fast
        else:
            arr = self._exact
        return arr[:, 0], arr[:, 1], arr[:, 2]


class LineBundle:
    """Integer coefficient table of many lines with vectorised exact queries.

    int64 is used whenever the magnitudes involved provably fit; otherwise
    the same expressions run on Python-int object arrays.
    """

    def __init__(self, lines: Sequence[Line]):
        self.lines = list(lines)
        coeffs = [line.coefficients for line in self.lines]
        self.max_coefficient = max((abs(c) for t in coeffs for c in t), default=0)
        self._exact = np.array(coeffs, dtype=object).reshape(-1, 3)
        self._fast = self._exact.astype(np.int64) if self.max_coefficient < _COEFF_SAFE else None
        if self._fast is None:
            logger.debug(f"Coefficients up to {self.max_coefficient} exceed int64 headroom; "
                         f"using object arrays for {len(self.lines)} lines")

    def __len__(self) -> int:
        return len(self.lines)

    def _columns(self, fast: bool, rows):
        arr = self._fast if fast else self._exact
        arr = arr[rows]
        return arr[:, 0], arr[:, 1], arr[:, 2]

    def sides(self, batch: PointBatch, rows=slice(None)) -> np.ndarray:
        """int8 matrix of line.side_of(point) for the selected lines."""
        fast = (self._fast is not None
                and 3 * self.max_coefficient * batch.max_abs < _INT64_SAFE)
        big_a, big_b, big_c = self._columns(fast, rows)
        x, y, w = batch.columns(fast)
        values = (big_a[:, None] * x[None, :] + big_b[:, None] * y[None, :]
                  + big_c[:, None] * w[None, :])
        return (values > 0).astype(np.int8) - (values < 0).astype(np.int8)

    def crossing_groups(self, line: Line) -> List[List[int]]:
        """Groups (size >= 2) of bundle lines crossing ``line`` at one point.

        Lines equal or parallel to ``line`` never appear.
        """
        a0, b0, c0 = line.coefficients
        if self._fast is not None and max(abs(a0), abs(b0), abs(c0)) < _COEFF_SAFE:
            big_a, big_b, big_c = self._columns(True, slice(None))
            w = a0 * big_b - big_a * b0
            if b0 != 0:
                num = b0 * big_c - big_b * c0
            else:
                num = c0 * big_a - big_c * a0
            keep = np.nonzero(w != 0)[0]
            if keep.size < 2:
                return []
            w, num = w[keep], num[keep]
            flip = np.sign(w)
            w, num = w * flip, num * flip
            g = np.gcd(num, w)
            num, w = num // g, w // g
            order = np.lexsort((w, num))
            num, w, members = num[order], w[order], keep[order]
            same = (num[1:] == num[:-1]) & (w[1:] == w[:-1])
            if not same.any():
                return []
            starts = np.flatnonzero(np.diff(np.concatenate(([0], same.astype(np.int8), [0]))) == 1)
            ends = np.flatnonzero(np.diff(np.concatenate(([0], same.astype(np.int8), [0]))) == -1)
            return [sorted(members[s:e + 1].tolist()) for s, e in zip(starts, ends)]

        buckets: Dict[Point, List[int]] = defaultdict(list)
        for idx, other in enumerate(self.lines):
            meet = intersect(line, other)
            if meet.kind is IntersectionKind.POINT:
                buckets[meet.point].append(idx)
        return [members for members in buckets.values() if len(members) >= 2]
