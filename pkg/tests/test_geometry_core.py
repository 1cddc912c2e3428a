"""
Tests for exact primitives, duality and object classification.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.geometry_core import (
    Angle, Box, GeometryError, GuideLine, HalfPlane, IntersectionKind, Line, LineBundle,
    Location, MalformedInstanceError, NoDualError, Point, PointBatch, Segment, Strip,
    Triangle, classify_point, concurrent, dual_of_line, dual_of_point, dual_of_segment,
    format_scalar, intersect, orientation, to_scalar,
)


def L(a, b):
    return Line.non_vertical(a, b)


def rational(rng, span=5):
    return Fraction(int(rng.integers(-span * 10, span * 10 + 1)), int(rng.integers(1, 10)))


class TestScalars:
    def test_parse_forms(self):
        assert to_scalar("3/6") == Fraction(1, 2)
        assert to_scalar(4) == Fraction(4)
        assert to_scalar(" -7/2 ") == Fraction(-7, 2)

    def test_rejects_floats_and_garbage(self):
        with pytest.raises(GeometryError):
            to_scalar(0.5)
        with pytest.raises(GeometryError):
            to_scalar("1/0")
        with pytest.raises(GeometryError):
            to_scalar(True)

    def test_format_is_num_over_den(self):
        assert format_scalar(Fraction(-6, 4)) == "-3/2"
        assert format_scalar(Fraction(5)) == "5/1"


class TestLines:
    def test_intersection_point(self):
        meet = intersect(L(1, 0), L(-1, 2))
        assert meet.kind is IntersectionKind.POINT
        assert meet.point == Point(1, 1)

    def test_parallel_and_coincident(self):
        assert intersect(L(2, 1), L(2, 3)).kind is IntersectionKind.PARALLEL
        assert intersect(L(3, -5), L(3, -5)).kind is IntersectionKind.COINCIDENT

    def test_vertical_crossing(self):
        assert intersect(Line.at_x(2), L(1, 1)).point == Point(2, 3)
        assert intersect(Line.at_x(2), Line.at_x(5)).kind is IntersectionKind.PARALLEL

    def test_rational_crossing_is_exact(self):
        meet = intersect(L(Fraction(1, 3), 0), L(0, Fraction(1, 7)))
        assert meet.point == Point(Fraction(3, 7), Fraction(1, 7))

    def test_side_of(self):
        line = L(1, 0)
        assert line.side_of(Point(0, 1)) == 1
        assert line.side_of(Point(0, -1)) == -1
        assert line.side_of(Point(5, 5)) == 0
        upright = Line.at_x(1)
        assert upright.side_of(Point(0, 0)) == 1
        assert upright.side_of(Point(2, 0)) == -1

    def test_through(self):
        assert Line.through(Point(0, 1), Point(2, 5)) == L(2, 1)
        assert Line.through(Point(3, 0), Point(3, 9)) == Line.at_x(3)
        with pytest.raises(GeometryError):
            Line.through(Point(1, 1), Point(1, 1))

    def test_coefficients_match_side(self):
        line = L(Fraction(2, 3), Fraction(-1, 2))
        big_a, big_b, big_c = line.coefficients
        p = Point(Fraction(5, 4), 7)
        x, y, w = p.homogeneous
        assert np.sign(big_a * x + big_b * y + big_c * w) == line.side_of(p)
        assert big_b > 0


class TestOrientation:
    def test_examples(self):
        assert orientation(Point(0, 0), Point(1, 0), Point(2, 0)) == 0
        assert orientation(Point(0, 0), Point(1, 0), Point(1, 1)) == 1
        assert orientation(Point(0, 0), Point(1, 0), Point(1, -1)) == -1

    def test_antisymmetric_under_swaps(self):
        rng = np.random.default_rng(31)
        for _ in range(500):
            p, q, r = (Point(rational(rng), rational(rng)) for _ in range(3))
            if rng.random() < 0.2:
                r = Point(2 * q.x - p.x, 2 * q.y - p.y)
            turn = orientation(p, q, r)
            assert orientation(q, p, r) == -turn
            assert orientation(p, r, q) == -turn
            assert orientation(r, q, p) == -turn
            assert orientation(q, r, p) == turn


class TestConcurrent:
    def test_origin(self):
        assert concurrent(L(1, 0), L(-1, 0), L(0, 0)) == Point(0, 0)

    def test_two_parallels(self):
        assert concurrent(L(1, 0), L(1, 1), L(0, 0)) is None

    def test_with_vertical(self):
        assert concurrent(L(0, 0), L(1, 0), Line.at_x(2)) is None

    def test_repeated_line_rejected(self):
        with pytest.raises(MalformedInstanceError):
            concurrent(L(1, 0), L(1, 0), L(0, 0))


class TestDuality:
    def test_line_to_point_and_back(self):
        assert dual_of_line(L(2, 3)) == Point(2, -3)
        assert dual_of_point(Point(2, -3)) == L(2, 3)

    def test_vertical_has_no_dual(self):
        with pytest.raises(NoDualError):
            dual_of_line(Line.at_x(1))

    def test_incidence_preserved(self):
        p, line = Point(3, 7), L(2, 1)
        assert line.contains(p)
        assert dual_of_point(p).contains(dual_of_line(line))

    def test_above_below_preserved(self):
        p, line = Point(0, 5), L(1, 1)
        assert line.side_of(p) == 1
        assert dual_of_point(p).side_of(dual_of_line(line)) == 1

    def test_vertical_segment_dual_is_strip(self):
        dual = dual_of_segment(Segment(Point(1, 0), Point(1, 2)))
        assert isinstance(dual, Strip)
        assert set(dual.boundary_lines()) == {L(1, 0), L(1, -2)}
        # y = 0.5 * x + 0.5 meets the segment at (1, 1)
        assert classify_point(dual_of_line(L(Fraction(1, 2), Fraction(1, 2))), dual) is Location.INTERIOR

    def test_horizontal_segment_dual_is_double_wedge(self):
        seg = Segment(Point(0, 0), Point(1, 0))
        dual = dual_of_segment(seg)
        assert isinstance(dual, Angle) and dual.double
        assert set(dual.boundary_lines()) == {L(0, 0), L(1, 0)}
        for line in (L(Fraction(1, 3), Fraction(-1, 10)), L(-1, Fraction(1, 2)), L(1, 1)):
            crosses = seg.meets(line)
            inside = classify_point(dual_of_line(line), dual) is not Location.EXTERIOR
            assert crosses == inside

    def test_degenerate_segment(self):
        with pytest.raises(GeometryError):
            Segment(Point(1, 1), Point(1, 1))

    def test_concurrency_is_dual_collinearity(self):
        rng = np.random.default_rng(32)
        concurrent_seen = 0
        for _ in range(500):
            l1, l2, l3 = (L(rational(rng), rational(rng)) for _ in range(3))
            meet = intersect(l1, l2).point
            if meet is not None and rng.random() < 0.3:
                a = rational(rng)
                l3 = L(a, meet.y - a * meet.x)
            # three parallels meet only at infinity
            if len({l1, l2, l3}) < 3 or len({l1.a, l2.a, l3.a}) == 1:
                continue
            together = concurrent(l1, l2, l3) is not None
            concurrent_seen += together
            assert together == (orientation(dual_of_line(l1), dual_of_line(l2), dual_of_line(l3)) == 0)
        assert concurrent_seen > 50

    def test_segment_dual_incidence(self):
        rng = np.random.default_rng(33)
        for _ in range(500):
            p = Point(rational(rng), rational(rng))
            q = Point(p.x if rng.random() < 0.3 else rational(rng), rational(rng))
            if p == q:
                continue
            seg = Segment(p, q)
            x = Point(rational(rng), rational(rng))
            if rng.random() < 0.2:
                # the dual line of x then passes through p
                x = Point(x.x, p.x * x.x - p.y)
            line = dual_of_point(x)
            where = classify_point(x, dual_of_segment(seg))
            assert seg.meets(line) == (where is not Location.EXTERIOR)
            assert (line.side_of(p) * line.side_of(q) < 0) == (where is Location.INTERIOR)


class TestClassification:
    def test_strip(self):
        strip = Strip(L(0, -1), L(0, 1))
        assert classify_point(Point(0, 0), strip) is Location.INTERIOR
        assert classify_point(Point(0, 1), strip) is Location.BOUNDARY
        assert classify_point(Point(0, 5), strip) is Location.EXTERIOR

    def test_strip_needs_parallel_lines(self):
        with pytest.raises(GeometryError):
            Strip(L(0, 0), L(1, 0))

    def test_angle(self):
        wedge = Angle(L(1, 0), L(-1, 0), 1, 1)
        assert classify_point(Point(0, 3), wedge) is Location.INTERIOR
        assert classify_point(Point(0, -3), wedge) is Location.EXTERIOR
        assert classify_point(Point(0, 0), wedge) is Location.BOUNDARY
        assert wedge.apex == Point(0, 0)

    def test_triangle(self):
        tri = Triangle(Point(0, 0), Point(4, 0), Point(0, 4))
        assert classify_point(Point(1, 1), tri) is Location.INTERIOR
        assert classify_point(Point(2, 2), tri) is Location.BOUNDARY
        assert classify_point(Point(3, 3), tri) is Location.EXTERIOR
        with pytest.raises(GeometryError):
            Triangle(Point(0, 0), Point(1, 1), Point(2, 2))

    def test_halfplane_and_guide(self):
        below = HalfPlane(L(0, 0), -1)
        assert classify_point(Point(0, -1), below) is Location.INTERIOR
        assert classify_point(Point(0, 1), below) is Location.EXTERIOR
        assert classify_point(Point(7, 0), GuideLine(L(0, 0))) is Location.EXTERIOR

    def test_box(self):
        box = Box(0, 0, 2, 1)
        assert box.area == 2
        assert box.contains(Point(2, 1)) and not box.strictly_contains(Point(2, 1))
        with pytest.raises(GeometryError):
            Box(0, 0, 0, 1)


class TestLineBundle:
    def test_sides_match_scalar_predicate(self):
        lines = [L(1, 0), L(-2, 3), Line.at_x(Fraction(1, 2)), L(Fraction(1, 3), -1)]
        points = [Point(0, 0), Point(1, 5), Point(Fraction(1, 2), -4), Point(-3, Fraction(7, 5))]
        table = LineBundle(lines).sides(PointBatch(points))
        expected = [[line.side_of(p) for p in points] for line in lines]
        assert table.tolist() == expected

    def test_huge_coefficients_use_exact_path(self):
        big = 10 ** 30
        lines = [L(big, 1), L(-big, 1)]
        points = [Point(0, 2), Point(1, 0)]
        table = LineBundle(lines).sides(PointBatch(points))
        assert table.tolist() == [[line.side_of(p) for p in points] for line in lines]

    def test_crossing_groups(self):
        base = L(0, 0)
        bundle = LineBundle([L(1, -1), L(-1, 1), L(2, -4), L(1, -2), L(0, 5)])
        groups = bundle.crossing_groups(base)
        assert sorted(map(sorted, groups)) == [[0, 1], [2, 3]]

    def test_crossing_groups_exact_fallback(self):
        big = 10 ** 20
        bundle = LineBundle([L(big, -big), L(-1, 1), L(3, 0)])
        groups = bundle.crossing_groups(L(0, 0))
        assert sorted(map(sorted, groups)) == [[0, 1]]
