import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mincurv.curves import half_plane_check, validate_membership
from mincurv.errors import InfeasibleGeometry, RadiusTooLarge
from mincurv.exact import CaseTag, baseline_parabola, build_arc_segment, build_dubins, compute_ra
from mincurv.geometry import Point2, UnitVec2, length_bounds, normalize_problem

from conftest import RA_SQUARE, S2, random_instances, square_corner
from oracles import hausdorff, polyline_length


def test_ra_square(square):
    assert abs(compute_ra(square) - RA_SQUARE) <= 1e-12


def test_exact_square(square):
    sol = build_arc_segment(square)
    assert sol.case_tag is CaseTag.SegmentThenArc
    assert abs(sol.segment_length - RA_SQUARE) <= 1e-12
    line, arc = sol.path.pieces
    assert abs(line.length - RA_SQUARE) <= 1e-12
    assert arc.sweep == 3 * math.pi / 4
    # corrected value: ((sqrt 2 - 1)/2)(1 + 3 pi/4) = 0.6950906...
    expected = RA_SQUARE * (1 + 3 * math.pi / 4)
    assert sol.path.total_length == pytest.approx(expected, abs=1e-14)
    assert sol.path.total_length == pytest.approx(0.695091, abs=5e-7)
    assert polyline_length(sol.path) == pytest.approx(expected, rel=1e-7)


def test_exact_cases():
    a, b = UnitVec2(1.0, 0.0), UnitVec2(0.0, 1.0)
    O = Point2(0, 0)
    sym = build_arc_segment(normalize_problem(O - a, O + b, a, b))
    assert sym.case_tag is CaseTag.PureArc and sym.segment_length == 0.0
    assert len(sym.path.pieces) == 1 and sym.r_a == pytest.approx(1.0)
    inst = normalize_problem(O - a, O + b * 3, a, b)
    late = build_arc_segment(inst)
    assert late.case_tag is CaseTag.ArcThenSegment
    assert late.segment_length == pytest.approx(2.0)
    assert validate_membership(late.path, inst).ok


def test_exact_infeasible_raises():
    # alpha leads away from the corner
    inst = normalize_problem(Point2(1, 0), Point2(0, 1), UnitVec2(1.0, 0.0), UnitVec2(0.0, 1.0))
    with pytest.raises(InfeasibleGeometry):
        build_arc_segment(inst)


def _rotate(p, c, s):
    return Point2(c * p.x - s * p.y, s * p.x + c * p.y)


@settings(max_examples=60, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(-10, 10), st.floats(-10, 10), st.floats(0.01, 100.0))
def test_ra_isometry_and_scaling(theta, tx, ty, lam):
    base = square_corner()
    c, s = math.cos(theta), math.sin(theta)
    t = Point2(tx, ty)

    def move(p):
        return _rotate(p, c, s) + t

    def turn(u):
        return UnitVec2.normalized(*_rotate(u, c, s))

    moved = normalize_problem(move(base.A), move(base.B), turn(base.alpha), turn(base.beta))
    assert compute_ra(moved) == pytest.approx(RA_SQUARE, rel=1e-9)
    scaled = normalize_problem(base.A * lam, base.B * lam, base.alpha, base.beta)
    assert compute_ra(scaled) == pytest.approx(lam * RA_SQUARE, rel=1e-12)


@pytest.mark.parametrize("R", [0.05, 0.1, 0.15, 0.2, RA_SQUARE])
def test_dubins_square(square, R):
    path = build_dubins(square, R)
    assert validate_membership(path, square, 1e-9).ok
    assert path.min_radius == R or (R == RA_SQUARE and abs(path.min_radius - R) < 1e-15)
    assert abs(sum(a.sweep for a in path.arcs) - 3 * math.pi / 4) <= 1e-9
    assert half_plane_check(path)


def test_dubins_radius_limits(square):
    with pytest.raises(RadiusTooLarge):
        build_dubins(square, 0.3)
    with pytest.raises(ValueError):
        build_dubins(square, 0.0)


def test_dubins_below_ra_has_smaller_radius():
    for inst in random_instances(30, 11):
        ra = compute_ra(inst)
        for f in (0.1, 0.5, 0.99):
            assert build_dubins(inst, f * ra).min_radius < ra


def test_dubins_converges_to_exact():
    for inst in [square_corner(), *random_instances(4, 5)]:
        ra = compute_ra(inst)
        J = build_arc_segment(inst).path
        prev = math.inf
        for k in range(3, 10):
            R = ra * (1 - 10.0**-k)
            h = hausdorff(build_dubins(inst, R), J, 200)
            assert h <= 5 * (ra - R) + 1e-12 * ra
            assert h < prev
            prev = h


def _parabola_radius_grid(A, O, B, n):
    # derivative and second derivative written out from the Bernstein form
    t = np.linspace(0.0, 1.0, n)
    dx = 2 * (1 - t) * (O[0] - A[0]) + 2 * t * (B[0] - O[0])
    dy = 2 * (1 - t) * (O[1] - A[1]) + 2 * t * (B[1] - O[1])
    ddx = 2 * (A[0] - 2 * O[0] + B[0])
    ddy = 2 * (A[1] - 2 * O[1] + B[1])
    return np.min((dx * dx + dy * dy) ** 1.5 / np.abs(dx * ddy - dy * ddx))


def test_parabola_square(square):
    bp = baseline_parabola(square)
    assert abs(bp.min_radius - math.sqrt(5) / 25) <= 1e-9
    grid = _parabola_radius_grid((0.5, -0.5), (0.0, 0.0), (0.0, -0.5), 100_001)
    assert abs(bp.min_radius - grid) <= 1e-6
    assert bp.t_min == pytest.approx(0.6)
    assert bp.radius(bp.t_min) == pytest.approx(bp.min_radius, rel=1e-12)


def test_parabola_random_against_grid():
    for inst in random_instances(30, 3):
        bp = baseline_parabola(inst)
        grid = _parabola_radius_grid(list(inst.A), list(inst.O), list(inst.B), 100_001)
        assert bp.min_radius == pytest.approx(grid, rel=1e-6)
        assert bp.min_radius <= compute_ra(inst) * (1 + 1e-12)


def test_parabola_length_within_bounds():
    for inst in random_instances(30, 4):
        bd = length_bounds(inst)
        L = baseline_parabola(inst).length()
        assert bd.mu - 1e-9 <= L <= bd.nu + 1e-9
