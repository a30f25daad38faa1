"""Piecewise arc/line paths: sampling, curvature, membership checks, export."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import GeometryError
from .geometry import POS_TOL, Point2, ProblemInstance, UnitVec2, signed_angle


@dataclass(frozen=True)
class ArcPiece:
    """Circular arc stored as center, radius, start angle and signed sweep.

    ``start_angle`` is the polar angle of the start point seen from the
    center.  A positive sweep runs counterclockwise (left turn).
    """

    center: Point2
    radius: float
    start_angle: float
    sweep: float

    def __post_init__(self):
        if not self.radius > 0:
            raise GeometryError(f"arc radius must be positive, got {self.radius}")
        if self.sweep == 0 or not math.isfinite(self.sweep):
            raise GeometryError("arc sweep must be finite and nonzero")

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    @property
    def curvature(self) -> float:
        return 1.0 / self.radius

    def point_at(self, t: float) -> Point2:
        a = self.start_angle + t * self.sweep
        return Point2(self.center.x + self.radius * math.cos(a), self.center.y + self.radius * math.sin(a))

    def heading_at(self, t: float) -> float:
        return self.start_angle + t * self.sweep + math.copysign(math.pi / 2, self.sweep)

    @property
    def start(self) -> Point2:
        return self.point_at(0.0)

    @property
    def end(self) -> Point2:
        return self.point_at(1.0)

    @property
    def turning(self) -> float:
        return self.sweep

    def reversed(self) -> ArcPiece:
        return ArcPiece(self.center, self.radius, self.start_angle + self.sweep, -self.sweep)


@dataclass(frozen=True)
class LinePiece:
    start: Point2
    end: Point2

    def __post_init__(self):
        if self.start.dist(self.end) <= 0:
            raise GeometryError("zero-length line piece")

    @property
    def length(self) -> float:
        return self.start.dist(self.end)

    @property
    def curvature(self) -> float:
        return 0.0

    @property
    def turning(self) -> float:
        return 0.0

    def point_at(self, t: float) -> Point2:
        if t == 1.0:
            return self.end
        return self.start + (self.end - self.start) * t

    def heading_at(self, t: float) -> float:
        return (self.end - self.start).angle()

    def reversed(self) -> LinePiece:
        return LinePiece(self.end, self.start)


Piece = Union[ArcPiece, LinePiece]


def _wrap(angle: float) -> float:
    """Map to (-pi, pi]."""
    return math.atan2(math.sin(angle), math.cos(angle))


def joint_defect(prev: Piece, cur: Piece, pos_tol: float = POS_TOL) -> tuple[float, float]:
    """Position gap and tangent jump between consecutive pieces.

    A line's direction is only known to about (coordinate error / length),
    so a tangent jump at a line of length l counts as zero when jump * l is
    below ``pos_tol / 1000``: the line is then that close to a tangent one.
    """
    gap = prev.end.dist(cur.start)
    kink = abs(_wrap(cur.heading_at(0.0) - prev.heading_at(1.0)))
    lines = [p.length for p in (prev, cur) if isinstance(p, LinePiece)]
    if lines and kink * min(lines) <= pos_tol * 1e-3:
        kink = 0.0
    return gap, kink


@dataclass(frozen=True)
class PiecewisePath:
    """G1-continuous chain of pieces, checked at construction."""

    pieces: tuple[Piece, ...]
    pos_tol: float = POS_TOL
    g1_tol: float = POS_TOL
    total_length: float = field(init=False)

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if not pieces:
            raise GeometryError("empty path")
        object.__setattr__(self, "pieces", pieces)
        for k in range(1, len(pieces)):
            gap, kink = joint_defect(pieces[k - 1], pieces[k], self.pos_tol)
            if gap > self.pos_tol:
                raise GeometryError(f"position gap {gap:.3e} at joint {k}")
            if kink > self.g1_tol:
                raise GeometryError(f"tangent jump {kink:.3e} rad at joint {k}")
        object.__setattr__(self, "total_length", math.fsum(p.length for p in pieces))

    @property
    def start(self) -> Point2:
        return self.pieces[0].start

    @property
    def end(self) -> Point2:
        return self.pieces[-1].end

    @property
    def start_tangent(self) -> UnitVec2:
        return UnitVec2.from_angle(self.pieces[0].heading_at(0.0))

    @property
    def end_tangent(self) -> UnitVec2:
        return UnitVec2.from_angle(self.pieces[-1].heading_at(1.0))

    @property
    def total_turning(self) -> float:
        return math.fsum(p.turning for p in self.pieces)

    @property
    def arcs(self) -> list[ArcPiece]:
        return [p for p in self.pieces if isinstance(p, ArcPiece)]

    @property
    def min_radius(self) -> float:
        radii = [a.radius for a in self.arcs]
        return min(radii) if radii else math.inf

    def reversed(self) -> PiecewisePath:
        return PiecewisePath(tuple(p.reversed() for p in reversed(self.pieces)), self.pos_tol, self.g1_tol)


@dataclass(frozen=True)
class CurvePoint:
    s: float
    position: Point2
    phi: float
    curvature: float


@dataclass(frozen=True)
class CurvatureProfile:
    steps: list[tuple[float, float, float]]  # (s_start, s_end, curvature)
    max_curvature: float
    min_radius: float


def sample_path(path: PiecewisePath, n: int) -> list[CurvePoint]:
    """``n`` points at uniform arc length; ``phi`` starts at 0."""
    if n < 2:
        raise ValueError("need at least two samples")
    lengths = [p.length for p in path.pieces]
    bounds = np.concatenate([[0.0], np.cumsum(lengths)])
    bounds[-1] = path.total_length
    phi0 = np.concatenate([[0.0], np.cumsum([p.turning for p in path.pieces])])
    out = []
    for s in np.linspace(0.0, path.total_length, n):
        k = min(int(np.searchsorted(bounds, s, side="right")) - 1, len(path.pieces) - 1)
        piece = path.pieces[k]
        t = 1.0 if s == path.total_length and k == len(path.pieces) - 1 else (s - bounds[k]) / lengths[k]
        t = min(max(t, 0.0), 1.0)
        out.append(CurvePoint(float(s), piece.point_at(t), float(phi0[k] + t * piece.turning), piece.curvature))
    return out


def curvature_profile(path: PiecewisePath) -> CurvatureProfile:
    steps = []
    s = 0.0
    for p in path.pieces:
        steps.append((s, s + p.length, p.curvature))
        s += p.length
    r = path.min_radius
    return CurvatureProfile(steps, 0.0 if math.isinf(r) else 1.0 / r, r)


@dataclass
class ValidationReport:
    """Per-clause verdicts; ``messages`` explains every failed clause."""

    clauses: dict[str, bool] = field(default_factory=dict)
    messages: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def record(self, name: str, passed: bool, message: str = "") -> None:
        self.clauses[name] = bool(passed)
        if not passed:
            self.messages[name] = message

    def failures(self) -> list[str]:
        return [f"{k}: {self.messages.get(k, '')}" for k, v in self.clauses.items() if not v]


def validate_membership(path: PiecewisePath, inst: ProblemInstance, tol: float = 1e-9) -> ValidationReport:
    """Check that ``path`` is an admissible curve for ``inst``.

    Clauses: start/end points, start/end tangents, C1 joints, monotone
    turning angle, total turning equal to omega, turning angle in [0, omega].
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    rep = ValidationReport()
    d = path.start.dist(inst.A)
    rep.record("start_point", d <= tol, f"X(0) is {d:.3e} from A")
    d = path.end.dist(inst.B)
    rep.record("end_point", d <= tol, f"X(L) is {d:.3e} from B")
    phi_start = signed_angle(inst.alpha, path.start_tangent)
    rep.record("start_tangent", abs(phi_start) <= tol, f"X'(0) deviates from alpha by {phi_start:.3e} rad")
    e = abs(signed_angle(inst.beta, path.end_tangent))
    rep.record("end_tangent", e <= tol, f"X'(L) deviates from beta by {e:.3e} rad")

    worst = 0.0
    for k in range(1, len(path.pieces)):
        worst = max(worst, *joint_defect(path.pieces[k - 1], path.pieces[k], tol))
    rep.record("continuity", worst <= tol, f"joint defect {worst:.3e}")

    phi = phi_start
    lo = hi = phi
    s = 0.0
    bad_s = None
    for p in path.pieces:
        if p.turning < -tol and bad_s is None:
            bad_s = s
        phi += p.turning
        lo, hi = min(lo, phi), max(hi, phi)
        s += p.length
    rep.record("phi_monotone", bad_s is None, f"phi non-monotone at s={bad_s}")
    turn = phi - phi_start
    rep.record("total_turning", abs(turn - inst.omega) <= tol, f"total turning {turn} != omega {inst.omega}")
    rep.record("phi_range", lo >= -tol and hi <= inst.omega + tol, f"phi spans [{lo}, {hi}] not within [0, {inst.omega}]")
    return rep


def _sample_arrays(path: PiecewisePath, n: int) -> tuple[np.ndarray, np.ndarray]:
    pts = sample_path(path, n)
    xy = np.array([[c.position.x, c.position.y] for c in pts])
    heading = path.pieces[0].heading_at(0.0) + np.array([c.phi for c in pts])
    return xy, heading


def half_plane_check(path: PiecewisePath, n: int = 200, tol: float = 1e-9) -> bool:
    """Every sample lies on the left of every sampled tangent line."""
    xy, heading = _sample_arrays(path, n)
    normals = np.stack([-np.sin(heading), np.cos(heading)], axis=1)
    # gaps[s, t] = <X(t) - X(s), N(s)>
    gaps = xy @ normals.T
    gaps = gaps.T - np.sum(xy * normals, axis=1)[:, None]
    scale = max(1.0, path.total_length)
    return bool(np.all(gaps >= -tol * scale))


def samples_to_csv(points: Sequence[CurvePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "x", "y", "phi", "curvature"])
    for c in points:
        w.writerow([repr(c.s), repr(c.position.x), repr(c.position.y), repr(c.phi), repr(c.curvature)])
    return buf.getvalue()


def path_to_dict(path: PiecewisePath) -> dict:
    pieces = []
    for p in path.pieces:
        if isinstance(p, ArcPiece):
            pieces.append({
                "type": "arc",
                "center": list(p.center),
                "radius": p.radius,
                "start_angle": p.start_angle,
                "sweep": p.sweep,
                "start": list(p.start),
                "end": list(p.end),
            })
        else:
            pieces.append({"type": "line", "start": list(p.start), "end": list(p.end)})
    return {"pieces": pieces, "total_length": path.total_length, "min_radius": _finite(path.min_radius)}


def _finite(v: float) -> float | None:
    return None if math.isinf(v) else v


def svg_path_data(path: PiecewisePath) -> str:
    """SVG ``d`` attribute; y is negated so the picture keeps its orientation."""
    s = path.start
    cmds = [f"M {s.x:.12g} {-s.y:.12g}"]
    for p in path.pieces:
        e = p.end
        if isinstance(p, LinePiece):
            cmds.append(f"L {e.x:.12g} {-e.y:.12g}")
        else:
            large = 1 if abs(p.sweep) > math.pi else 0
            sweep_flag = 0 if p.sweep > 0 else 1
            cmds.append(f"A {p.radius:.12g} {p.radius:.12g} 0 {large} {sweep_flag} {e.x:.12g} {-e.y:.12g}")
    return " ".join(cmds)


def polyline_path_data(xy: np.ndarray) -> str:
    head = f"M {xy[0, 0]:.12g} {-xy[0, 1]:.12g}"
    return " ".join([head] + [f"L {x:.12g} {-y:.12g}" for x, y in xy[1:]])


def render_svg(layers: Sequence[tuple[str, str, np.ndarray]]) -> str:
    """Compose ``(css_class, d, sample_xy)`` layers into one SVG document.

    ``sample_xy`` is only used to fit the viewBox (5% margin).
    """
    allxy = np.vstack([xy for _, _, xy in layers])
    xmin, ymin = allxy.min(axis=0)
    xmax, ymax = allxy.max(axis=0)
    w, h = max(xmax - xmin, 1e-12), max(ymax - ymin, 1e-12)
    mx, my = 0.05 * w, 0.05 * h
    # viewBox lives in the y-flipped frame
    vb = (xmin - mx, -ymax - my, w + 2 * mx, h + 2 * my)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{vb[0]:.12g} {vb[1]:.12g} {vb[2]:.12g} {vb[3]:.12g}" width="600" height="{600 * vb[3] / vb[2]:.6g}">',
        "<style>path { fill: none; stroke-width: 1px; vector-effect: non-scaling-stroke; }"
        " .exact { stroke: #4fa8e0; } .dubins { stroke: #2060c0; } .discrete { stroke: #20a040; }"
        " .minlength { stroke: #d03030; } .baseline { stroke: #8040a0; }</style>",
    ]
    for cls, d, _ in layers:
        lines.append(f'<path class="{cls}" stroke="black" d="{d}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def path_to_svg(path: PiecewisePath, css_class: str = "curve") -> str:
    xy, _ = _sample_arrays(path, 512)
    return render_svg([(css_class, svg_path_data(path), xy)])
