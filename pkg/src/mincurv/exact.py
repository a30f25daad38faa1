"""Closed-form curves: the arc+segment optimum, the Dubins family, the parabola."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .curves import ArcPiece, LinePiece, PiecewisePath
from .errors import InfeasibleGeometry, NumericalBreakdown, RadiusTooLarge
from .geometry import POS_TOL, Point2, ProblemInstance, feasibility_check

# below this sweep an end arc of a Dubins curve is dropped; the kink it
# leaves is bounded by the same value
DROP_SWEEP = 1e-12


class CaseTag(enum.Enum):
    SegmentThenArc = "SegmentThenArc"
    ArcThenSegment = "ArcThenSegment"
    PureArc = "PureArc"


@dataclass(frozen=True)
class ExactSolution:
    r_a: float
    path: PiecewisePath
    case_tag: CaseTag
    segment_length: float


def _require_feasible(inst: ProblemInstance):
    rep = feasibility_check(inst)
    if not rep.feasible:
        raise InfeasibleGeometry(f"tangents do not point through the corner (u0={rep.u0:.6g}, v0={rep.v0:.6g})")
    return rep


def compute_ra(inst: ProblemInstance) -> float:
    """Radius of the circle tangent to both rays from O at distance min(OA, OB)."""
    rep = _require_feasible(inst)
    return min(rep.u0, rep.v0) * math.tan((math.pi - inst.omega) / 2)


def _line_distance(p: Point2, origin: Point2, direction: Point2) -> float:
    return abs((p - origin).cross(direction))


def _left_arc(start: Point2, heading: Point2, radius: float, sweep: float) -> ArcPiece:
    """CCW arc leaving ``start`` along unit ``heading``."""
    n = heading.perp()
    center = start + n * radius
    return ArcPiece(center, radius, (-n).angle(), sweep)


def build_arc_segment(inst: ProblemInstance) -> ExactSolution:
    rep = _require_feasible(inst)
    r_a = compute_ra(inst)
    oa, ob = rep.u0, rep.v0
    t = min(oa, ob)
    O = inst.O
    if abs(oa - ob) <= POS_TOL:
        arc = _left_arc(inst.A, inst.alpha, r_a, inst.omega)
        pieces, tag, seg = (arc,), CaseTag.PureArc, 0.0
    elif oa > ob:
        D = O - inst.alpha * t
        arc = _left_arc(D, inst.alpha, r_a, inst.omega)
        pieces, tag, seg = (LinePiece(inst.A, D), arc), CaseTag.SegmentThenArc, oa - ob
    else:
        arc = _left_arc(inst.A, inst.alpha, r_a, inst.omega)
        E = arc.end
        pieces, tag, seg = (arc, LinePiece(E, inst.B)), CaseTag.ArcThenSegment, ob - oa
    c = arc.center
    da = _line_distance(c, O, inst.alpha)
    db = _line_distance(c, O, inst.beta)
    if abs(da - r_a) > POS_TOL or abs(db - r_a) > POS_TOL:
        raise NumericalBreakdown(f"arc circle not tangent to both lines ({da}, {db}, {r_a})")
    return ExactSolution(r_a, PiecewisePath(pieces), tag, seg)


def build_dubins(inst: ProblemInstance, R: float) -> PiecewisePath:
    """Left-straight-left curve with both arc radii equal to ``R``.

    Valid for ``0 < R <= R_a``; at ``R_a`` it coincides with the
    arc+segment curve.
    """
    r_a = compute_ra(inst)
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    if R > r_a * (1 + 1e-12):
        raise RadiusTooLarge(f"R={R} exceeds R_a={r_a}; curvature would change sign")
    if R >= r_a * (1 - 1e-12):
        return build_arc_segment(inst).path

    # tangent direction of the straight part, measured from the bisector of
    # the corner; F - G = 2 sin(omega/2) * ((m cot(omega/2) - R) e + h n)
    rep = feasibility_check(inst)
    half = inst.omega / 2
    psi = math.atan2((rep.v0 - rep.u0) / 2, (rep.u0 + rep.v0) / 2 / math.tan(half) - R)
    sweep_a, sweep_b = half + psi, half - psi
    if sweep_a < -1e-9 or sweep_b < -1e-9:
        raise RadiusTooLarge(f"R={R}: arc sweeps ({sweep_a}, {sweep_b}) leave the admissible set")
    sweep_a = max(sweep_a, 0.0)
    sweep_b = inst.omega - sweep_a
    d = inst.alpha.rotated(sweep_a)
    F = inst.B + inst.beta.perp() * R

    pieces = []
    cur = inst.A
    if sweep_a >= DROP_SWEEP:
        first = _left_arc(inst.A, inst.alpha, R, sweep_a)
        pieces.append(first)
        cur = first.end
    tangent_b = F - d.perp() * R
    if sweep_b >= DROP_SWEEP:
        if cur.dist(tangent_b) > 0:
            pieces.append(LinePiece(cur, tangent_b))
        last = ArcPiece(F, R, (tangent_b - F).angle(), sweep_b)
        pieces.append(last)
    else:
        pieces.append(LinePiece(cur, inst.B))
    return PiecewisePath(tuple(pieces))


@dataclass(frozen=True)
class ParabolaBaseline:
    """Quadratic Bezier through A and B with control point O."""

    control_points: tuple[Point2, Point2, Point2]
    min_radius: float
    t_min: float

    def _coeffs(self):
        A, O, B = (np.array([p.x, p.y]) for p in self.control_points)
        return A, O, B

    def point(self, t):
        A, O, B = self._coeffs()
        t = np.asarray(t, dtype=float)[..., None]
        return (1 - t) ** 2 * A + 2 * t * (1 - t) * O + t**2 * B

    def derivative(self, t):
        A, O, B = self._coeffs()
        t = np.asarray(t, dtype=float)[..., None]
        return 2 * ((1 - t) * (O - A) + t * (B - O))

    def radius(self, t):
        A, O, B = self._coeffs()
        d1 = self.derivative(t)
        d2 = 2 * (A - 2 * O + B)
        cross = np.abs(d1[..., 0] * d2[1] - d1[..., 1] * d2[0])
        return np.linalg.norm(d1, axis=-1) ** 3 / cross

    def sample(self, n: int) -> np.ndarray:
        return self.point(np.linspace(0.0, 1.0, n))

    def length(self) -> float:
        nodes, weights = np.polynomial.legendre.leggauss(64)
        t = 0.5 * (nodes + 1)
        speed = np.linalg.norm(self.derivative(t), axis=-1)
        return float(0.5 * np.dot(weights, speed))


def baseline_parabola(inst: ProblemInstance) -> ParabolaBaseline:
    """Parabola baseline with its minimum radius of curvature in closed form.

    ``|P' x P''|`` is constant along a quadratic Bezier, so the radius
    ``|P'|^3 / |P' x P''|`` is smallest where ``|P'|^2`` (a quadratic in t)
    is smallest.
    """
    _require_feasible(inst)
    A, O, B = inst.A, inst.O, inst.B
    u, v = O - A, B - O
    w = v - u
    # |P'(t)/2|^2 = |u + t w|^2, minimized at t = -<u,w>/|w|^2
    t = min(max(-u.dot(w) / w.dot(w), 0.0), 1.0)
    dp = (u + w * t) * 2.0
    cross = 4.0 * abs(u.cross(v))
    r = dp.norm() ** 3 / cross
    return ParabolaBaseline((A, O, B), r, t)
