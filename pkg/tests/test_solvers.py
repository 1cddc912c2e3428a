"""
Tests for parameter selection, Point-On-3-Lines, 3-Points-On-Line and hulls.
"""

import math

import numpy as np
import pytest

from src.geometry_core import Line, MalformedInstanceError, Point, orientation
from src.oracles import oracle_collinear_points, oracle_point_on_3_lines
from src.quantum_model import CostLedger, ExecMode, Mode
from src.settings_manager import SolverSettings
from src.solvers import choose_parameters, convex_hull, solve_3_points_on_line, solve_point_on_3_lines


def L(a, b):
    return Line.non_vertical(a, b)


def planted_lines(rng, n, span=1000):
    px, py = int(rng.integers(-span, span)), int(rng.integers(-span, span))
    slopes = rng.choice(np.arange(-span, span), size=3, replace=False)
    lines = {L(int(a), py - int(a) * px) for a in slopes}
    while len(lines) < n:
        lines.add(L(int(rng.integers(-span, span)), int(rng.integers(-span * span, span * span))))
    lines = list(lines)
    return [lines[i] for i in rng.permutation(n)], Point(px, py)


def random_lines(rng, n, span=1000):
    lines = set()
    while len(lines) < n:
        lines.add(L(int(rng.integers(-span, span)), int(rng.integers(-span * span, span * span))))
    return list(lines)


class TestChooseParameters:
    def test_small_n_uses_base_case(self):
        assert choose_parameters(4, 0.1).use_base_case
        assert choose_parameters(30, 0.1, settings=SolverSettings(base_cutoff=64)).use_base_case

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            choose_parameters(1, 0.1)

    def test_alpha_formula(self):
        n = 10 ** 6
        params = choose_parameters(n, 0.1, c2=8, settings=SolverSettings(k_rule="asymptotic"))
        expected = math.sqrt(2 * math.log(n) / (math.log(8) + math.log(math.log(n))))
        assert params.alpha == pytest.approx(expected)
        raw = n ** (1 / expected) * 3 * (5 * math.log(n) + math.log(20))
        assert params.k_asymptotic == min(max(4, math.ceil(raw)), n - 1)
        assert params.k == params.k_asymptotic

    def test_k_asymptotic_monotone_in_eps(self):
        ks = [choose_parameters(5000, eps).k_asymptotic for eps in (0.5, 0.1, 0.01, 0.001)]
        assert ks == sorted(ks)

    def test_balanced_k_in_range(self):
        params = choose_parameters(2000, 0.1)
        assert 4 <= params.k < 2000
        assert not params.use_base_case


class TestPointOn3Lines:
    def test_three_concurrent(self, charged, rng):
        witness = solve_point_on_3_lines([L(1, 0), L(-1, 0), L(0, 0)], 0.1, charged, CostLedger(), rng)
        assert witness.lines == (0, 1, 2)
        assert witness.point == Point(0, 0)

    def test_parallel_lines(self, charged, rng):
        lines = [L(2, b) for b in range(10)]
        assert solve_point_on_3_lines(lines, 0.1, charged, CostLedger(), rng) is None

    def test_pencil_of_five(self, sampling, rng):
        lines = [L(a, 3 - 2 * a) for a in range(5)]
        witness = solve_point_on_3_lines(lines, 0.1, sampling, CostLedger(), rng)
        assert witness.point == Point(2, 3)

    def test_three_equal_lines_are_concurrent(self, charged, rng):
        witness = solve_point_on_3_lines([L(1, 1)] * 3 + [L(0, 5)], 0.1, charged, CostLedger(), rng)
        assert witness.lines == (0, 1, 2)

    def test_duplicate_pair_plus_crossing_line(self, charged, rng):
        witness = solve_point_on_3_lines([L(1, 1), L(2, 0), L(1, 1)], 0.1, charged, CostLedger(), rng)
        assert sorted(witness.lines) == [0, 1, 2]
        assert witness.point == Point(1, 2)

    def test_vertical_lines_take_part(self, charged, rng):
        lines = [Line.at_x(2), L(1, 0), L(-1, 4), L(0, 7)]
        witness = solve_point_on_3_lines(lines, 0.1, charged, CostLedger(), rng)
        assert sorted(witness.lines) == [0, 1, 2]

    @pytest.mark.parametrize("mode", [Mode.CHARGED, pytest.param(Mode.SAMPLING, marks=pytest.mark.slow)])
    def test_planted_instance_recurses(self, mode, settings):
        rng = np.random.default_rng(2024)
        lines, point = planted_lines(rng, 60)
        ledger = CostLedger()
        witness = solve_point_on_3_lines(lines, 0.01, ExecMode(mode), ledger, rng, settings)
        assert witness is not None
        assert witness.point == point
        assert all(lines[i].contains(point) for i in witness.lines)
        assert ledger.quantum_queries >= len(lines)
        assert oracle_point_on_3_lines(lines).positive

    @pytest.mark.parametrize("mode", [Mode.CHARGED, pytest.param(Mode.SAMPLING, marks=pytest.mark.slow)])
    def test_negative_instance(self, mode, settings):
        rng = np.random.default_rng(99)
        lines = random_lines(rng, 40)
        assert not oracle_point_on_3_lines(lines).positive
        assert solve_point_on_3_lines(lines, 0.1, ExecMode(mode), CostLedger(), rng, settings) is None

    def test_charged_ledger_is_deterministic(self, settings):
        totals = []
        for _ in range(2):
            rng = np.random.default_rng(5)
            lines, _ = planted_lines(np.random.default_rng(11), 50)
            ledger = CostLedger()
            solve_point_on_3_lines(lines, 0.1, ExecMode(Mode.CHARGED), ledger, rng, settings)
            totals.append(ledger.to_record())
        assert totals[0] == totals[1]

    @pytest.mark.slow
    def test_planted_two_hundred(self):
        rng = np.random.default_rng(200)
        lines, point = planted_lines(rng, 200)
        settings = SolverSettings(base_cutoff=16)
        witness = solve_point_on_3_lines(lines, 0.05, ExecMode(Mode.CHARGED), CostLedger(), rng, settings)
        assert witness.point == point
        assert oracle_point_on_3_lines(lines, cap=None).positive


class TestThreePointsOnLine:
    def test_diagonal(self, charged, rng):
        witness = solve_3_points_on_line([Point(0, 0), Point(1, 1), Point(2, 2)], 0.1, charged,
                                         CostLedger(), rng)
        assert witness.points == (0, 1, 2)
        assert witness.line == L(1, 0)

    def test_vertical_prepass(self, charged, rng):
        witness = solve_3_points_on_line([Point(0, 0), Point(0, 1), Point(0, 2)], 0.1, charged,
                                         CostLedger(), rng)
        assert witness.line == Line.at_x(0)

    def test_duplicates_rejected(self, charged, rng):
        with pytest.raises(MalformedInstanceError):
            solve_3_points_on_line([Point(0, 0), Point(0, 0), Point(1, 2)], 0.1, charged,
                                   CostLedger(), rng)

    def test_general_position(self, charged, settings):
        rng = np.random.default_rng(3)
        points = set()
        while len(points) < 30:
            points.add(Point(int(rng.integers(-1000, 1000)), int(rng.integers(-10 ** 6, 10 ** 6))))
        points = sorted(points)
        assert not oracle_collinear_points(points).positive
        assert solve_3_points_on_line(points, 0.1, charged, CostLedger(), rng, settings) is None

    def test_planted_collinear(self, settings):
        rng = np.random.default_rng(8)
        points = [Point(int(x), int(rng.integers(-10 ** 6, 10 ** 6))) for x in range(-20, 20)]
        points[5], points[17], points[33] = Point(-15, -45), Point(-3, -9), Point(13, 39)
        witness = solve_3_points_on_line(points, 0.1, ExecMode(Mode.CHARGED), CostLedger(), rng, settings)
        i, j, l = witness.points
        assert orientation(points[i], points[j], points[l]) == 0


class TestConvexHull:
    def test_triangle(self):
        pts = [Point(0, 0), Point(4, 0), Point(0, 3)]
        assert set(convex_hull(pts)) == set(pts)

    def test_square_with_centre(self):
        corners = [Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)]
        hull = convex_hull(corners + [Point(1, 1)])
        assert set(hull) == set(corners)

    def test_random_points_left_of_every_edge(self):
        rng = np.random.default_rng(17)
        pts = [Point(int(x), int(y)) for x, y in rng.integers(-100, 100, size=(100, 2))]
        hull = convex_hull(pts)
        for a, b in zip(hull, hull[1:] + hull[:1]):
            assert all(orientation(a, b, p) >= 0 for p in pts)
