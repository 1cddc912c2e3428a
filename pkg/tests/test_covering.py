"""
Tests for General-Covering and the covering, visibility and separator reductions.
"""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from src.covering import (
    CoveringInstance, RecursiveCovering, separates, solve_general_covering, solve_point_covering,
    solve_segment_separator, solve_strips_cover_box, solve_triangles_cover_triangle,
    solve_visibility_between_segments, uncovered_sector,
)
from src.geometry_core import (
    Box, HalfPlane, Line, Location, MalformedInstanceError, Point, Segment, Strip, Triangle,
    classify_point,
)
from src.oracles import oracle_coverage, oracle_sightlines
from src.quantum_model import CostLedger, ExecMode, Mode


def L(a, b):
    return Line.non_vertical(a, b)


def V(x, y1, y2):
    return Segment(Point(x, y1), Point(x, y2))


BOX = Box(0, 0, 20, 20)
TARGET = Triangle(Point(0, 0), Point(20, 0), Point(0, 20))


def random_strips(rng, n):
    strips = set()
    while len(strips) < n:
        a, b = int(rng.integers(-3, 4)), int(rng.integers(-60, 61))
        strips.add(Strip(L(a, b), L(a, b + int(rng.integers(1, 11)))))
    return list(strips)


def random_triangles(rng, n):
    tris = []
    while len(tris) < n:
        pts = [Point(int(x), int(y)) for x, y in rng.integers(-5, 26, size=(3, 2))]
        try:
            tris.append(Triangle(*pts))
        except ValueError:
            continue
    return tris


class TestUncoveredSector:
    def test_open_corner(self):
        strips = [Strip(L(0, -5), L(0, 10))]
        assert uncovered_sector(Point(0, 20), strips, BOX.side_lines(), BOX.strictly_contains)

    def test_point_on_shared_edge_is_covered(self):
        strips = [Strip(L(0, -5), L(0, 10)), Strip(L(0, 10), L(0, 30))]
        assert not uncovered_sector(Point(5, 10), strips, BOX.side_lines(), BOX.strictly_contains)


class TestGeneralCovering:
    def test_no_objects(self, charged, rng):
        inst = CoveringInstance([], lambda x: True)
        assert solve_general_covering(inst, 0.1, charged, CostLedger(), rng) is None

    def test_crossing_strips_expose_crossing(self, charged, rng):
        strips = [Strip(L(0, 0), L(0, 1)), Strip(L(1, 0), L(1, 1))]
        found = solve_general_covering(CoveringInstance(strips, lambda x: True), 0.1, charged,
                                       CostLedger(), rng)
        assert found is not None
        assert all(classify_point(found, s) is not Location.INTERIOR for s in strips)

    def test_covered_region(self, charged, rng):
        strips = [Strip(L(0, -100), L(0, 100)), Strip(Line.at_x(-100), Line.at_x(100))]
        inside = Box(-50, -50, 50, 50).contains
        found = solve_general_covering(CoveringInstance(strips, inside), 0.1, charged,
                                       CostLedger(), rng)
        assert found is None

    def test_rejects_other_objects(self, charged, rng):
        tri = Triangle(Point(0, 0), Point(1, 0), Point(0, 1))
        with pytest.raises(MalformedInstanceError):
            solve_general_covering(CoveringInstance([tri], lambda x: True), 0.1, charged,
                                   CostLedger(), rng)

    def test_guides_add_candidates(self, charged, rng):
        strips = [Strip(L(0, 0), L(0, 1))]
        inst = CoveringInstance(strips, lambda x: x.y == 5, guides=[Line.at_x(3), L(1, 2)])
        found = solve_general_covering(inst, 0.1, charged, CostLedger(), rng)
        assert found == Point(3, 5)


class TestStripsCoverBox:
    def test_single_strip_covers(self, charged, rng):
        result = solve_strips_cover_box([Strip(L(0, -1), L(0, 21))], BOX, 0.1, charged,
                                        CostLedger(), rng)
        assert result.covered and result.witness is None

    def test_no_strips(self, charged, rng):
        result = solve_strips_cover_box([], BOX, 0.1, charged, CostLedger(), rng)
        assert not result.covered
        assert result.witness in BOX.corners()

    def test_touching_strips_still_cover(self, charged, rng):
        strips = [Strip(L(0, -1), L(0, 10)), Strip(L(0, 10), L(0, 21))]
        assert solve_strips_cover_box(strips, BOX, 0.1, charged, CostLedger(), rng).covered

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_matches_oracle(self, seed, settings):
        rng = np.random.default_rng(seed)
        strips = random_strips(rng, 12)
        expected = oracle_coverage(strips, "box", target=BOX)
        result = solve_strips_cover_box(strips, BOX, 0.1, ExecMode(Mode.CHARGED), CostLedger(),
                                        rng, settings)
        assert result.covered == (not expected.positive)
        if result.witness is not None:
            assert BOX.contains(result.witness)
            assert all(classify_point(result.witness, s) is not Location.INTERIOR for s in strips)

    @pytest.mark.slow
    def test_twenty_strips(self, settings):
        rng = np.random.default_rng(20)
        strips = random_strips(rng, 20)
        expected = oracle_coverage(strips, "box", target=BOX)
        result = solve_strips_cover_box(strips, BOX, 0.01, ExecMode(Mode.SAMPLING), CostLedger(),
                                        rng, settings)
        assert result.covered == (not expected.positive)


class TestTrianglesCoverTriangle:
    def test_identical_triangle(self, charged, rng):
        result = solve_triangles_cover_triangle([TARGET], TARGET, 0.1, charged, CostLedger(), rng)
        assert result.covered

    def test_empty_set(self, charged, rng):
        result = solve_triangles_cover_triangle([], TARGET, 0.1, charged, CostLedger(), rng)
        assert not result.covered
        assert result.witness in TARGET.vertices

    def test_fan_covers(self, charged, rng):
        centre = Point(5, 5)
        a, b, c = TARGET.vertices
        fan = [Triangle(centre, a, b), Triangle(centre, b, c), Triangle(centre, c, a)]
        assert solve_triangles_cover_triangle(fan, TARGET, 0.1, charged, CostLedger(), rng).covered

    @pytest.mark.parametrize("seed", [4, 5])
    def test_matches_oracle(self, seed, settings):
        rng = np.random.default_rng(seed)
        tris = random_triangles(rng, 10)
        expected = oracle_coverage(tris, "triangle", target=TARGET)
        result = solve_triangles_cover_triangle(tris, TARGET, 0.1, ExecMode(Mode.CHARGED),
                                                CostLedger(), rng, settings)
        assert result.covered == (not expected.positive)


class TestPointCovering:
    def test_single_halfplane(self, charged, rng):
        plane = HalfPlane(L(1, 0), 1)
        found = solve_point_covering([plane], 1, 0.1, charged, CostLedger(), rng)
        assert plane.boundary.side_of(found) >= 0

    def test_empty_common_intersection(self, charged, rng):
        planes = [HalfPlane(L(0, 1), 1), HalfPlane(L(0, 0), -1)]
        assert solve_point_covering(planes, 2, 0.1, charged, CostLedger(), rng) is None

    def test_all_contain_origin(self, charged, rng):
        planes = [HalfPlane(L(a, 1), -1) for a in range(-3, 4)]
        found = solve_point_covering(planes, len(planes), 0.1, charged, CostLedger(), rng)
        assert found is not None
        assert all(h.boundary.side_of(found) * h.side >= 0 for h in planes)

    def test_threshold_range(self, charged, rng):
        with pytest.raises(MalformedInstanceError):
            solve_point_covering([HalfPlane(L(0, 0), 1)], 2, 0.1, charged, CostLedger(), rng)

    @pytest.mark.parametrize("seed", [6, 7, 8])
    def test_matches_depth_oracle(self, seed, settings):
        rng = np.random.default_rng(seed)
        planes = [HalfPlane(L(int(rng.integers(-3, 4)), int(rng.integers(-20, 21))),
                            int(rng.choice([1, -1]))) for _ in range(15)]
        planes = list(dict.fromkeys(planes))
        expected = oracle_coverage(planes, "depth", t=4)
        found = solve_point_covering(planes, 4, 0.1, ExecMode(Mode.CHARGED), CostLedger(), rng, settings)
        assert (found is not None) == expected.positive


class TestVisibility:
    S1, S2 = V(0, -3, 3), V(20, 5, 9)

    def test_no_obstacles(self, charged, rng):
        line = solve_visibility_between_segments([], self.S1, self.S2, 0.1, charged, CostLedger(), rng)
        assert self.S1.meets(line) and self.S2.meets(line)

    def test_full_height_wall(self, charged, rng):
        wall = V(10, -100, 100)
        assert solve_visibility_between_segments([wall], self.S1, self.S2, 0.1, charged,
                                                 CostLedger(), rng) is None

    def test_obstacle_outside_span_ignored(self, charged, rng):
        wall = V(30, -100, 100)
        assert solve_visibility_between_segments([wall], self.S1, self.S2, 0.1, charged,
                                                 CostLedger(), rng) is not None

    def test_sightline_may_graze_endpoint(self, charged, rng):
        s1, s2 = V(0, 0, 1), V(20, 0, 1)
        blockers = [V(10, -50, 0), V(10, 1, 50)]
        line = solve_visibility_between_segments(blockers, s1, s2, 0.1, charged, CostLedger(), rng)
        assert line is not None
        assert not any(seg.crosses_open(line) for seg in blockers)

    def test_requires_vertical_segments(self, charged, rng):
        with pytest.raises(MalformedInstanceError):
            solve_visibility_between_segments([Segment(Point(1, 0), Point(2, 1))], self.S1,
                                              self.S2, 0.1, charged, CostLedger(), rng)
        with pytest.raises(MalformedInstanceError):
            solve_visibility_between_segments([], self.S1, V(0, 5, 6), 0.1, charged,
                                              CostLedger(), rng)

    @pytest.mark.parametrize("seed", [9, 10, 11])
    def test_matches_oracle(self, seed, settings):
        rng = np.random.default_rng(seed)
        obstacles = []
        for _ in range(10):
            low = int(rng.integers(-15, 10))
            obstacles.append(V(int(rng.integers(1, 20)), low, low + int(rng.integers(2, 12))))
        expected = oracle_sightlines(obstacles, self.S1, self.S2)
        line = solve_visibility_between_segments(obstacles, self.S1, self.S2, 0.1,
                                                 ExecMode(Mode.CHARGED), CostLedger(), rng, settings)
        assert (line is not None) == expected.positive


class TestSeparator:
    def test_two_disjoint_segments(self, charged, rng):
        segments = [V(0, 0, 2), V(5, 10, 12)]
        line = solve_segment_separator(segments, 0.1, charged, CostLedger(), rng)
        assert line is not None
        assert separates(line, segments)

    def test_overlapping_stack_has_no_separator(self, charged, rng):
        segments = [V(0, 0, 4), V(0, 2, 7), V(0, 5, 9)]
        assert solve_segment_separator(segments, 0.1, charged, CostLedger(), rng) is None

    def test_same_x_disjoint_stack(self, charged, rng):
        segments = [V(0, 0, 2), V(0, 5, 9)]
        line = solve_segment_separator(segments, 0.1, charged, CostLedger(), rng)
        assert line is not None and line.a == 0
        assert separates(line, segments, endpoints_needed=1)

    def test_single_segment(self, charged, rng):
        assert solve_segment_separator([V(0, 0, 1)], 0.1, charged, CostLedger(), rng) is None

    def test_separates_predicate(self):
        segments = [V(0, 0, 2), V(4, 0, 2)]
        assert not separates(L(0, 1), segments)
        assert not separates(L(0, 2), segments)
        assert separates(L(Fraction(1, 2), 0), [V(0, 0, 2), V(4, 0, 2), V(2, -5, -1)])

    @pytest.mark.parametrize("seed", [12, 13, 14])
    def test_matches_oracle(self, seed, settings):
        rng = np.random.default_rng(seed)
        segments = []
        for _ in range(9):
            low = int(rng.integers(-10, 10))
            segments.append(V(int(rng.integers(-10, 11)), low, low + int(rng.integers(1, 15))))
        segments = list(dict.fromkeys(segments))
        expected = oracle_sightlines(segments, separator=True)
        line = solve_segment_separator(segments, 0.1, ExecMode(Mode.CHARGED), CostLedger(), rng, settings)
        assert (line is not None) == expected.positive

    def test_distinct_abscissae_always_have_two_point_separator(self):
        # negatives only exist as single-abscissa stacks
        rng = np.random.default_rng(77)
        for _ in range(60):
            xs = rng.integers(-10, 11, size=int(rng.integers(2, 9)))
            if len(set(xs.tolist())) < 2:
                continue
            segments = []
            for x in xs:
                low = int(rng.integers(-10, 10))
                segments.append(V(int(x), low, low + int(rng.integers(1, 15))))
            segments = list(dict.fromkeys(segments))
            ends = [(p, i) for i, seg in enumerate(segments) for p in (seg.p, seg.q)]
            assert any(separates(Line.through(p, q), segments)
                       for (p, i), (q, j) in combinations(ends, 2) if i != j and p.x != q.x)

    @pytest.mark.parametrize("seed", range(4))
    def test_interleaved_segments_go_through_recursion(self, seed, settings, monkeypatch):
        calls = []
        solve = RecursiveCovering.solve

        def counted(self):
            calls.append(type(self).__name__)
            return solve(self)

        monkeypatch.setattr(RecursiveCovering, "solve", counted)
        rng = np.random.default_rng(100 + seed)
        xs = rng.permutation(np.arange(-6, 7))[:8]
        segments = [V(int(x), -10 + int(rng.integers(0, 4)), 10 - int(rng.integers(0, 4))) for x in xs]
        assert oracle_sightlines(segments, separator=True).positive
        line = solve_segment_separator(segments, 0.1, ExecMode(Mode.CHARGED), CostLedger(), rng, settings)
        assert line is not None and separates(line, segments)
        assert calls == ["GeneralCovering"]
