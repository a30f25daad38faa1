"""Planar primitives, problem normalization, feasibility and length bounds.

A problem is given by two endpoints ``A`` and ``B`` with unit tangents
``alpha`` (at ``A``) and ``beta`` (at ``B``).  The tangent lines meet at the
corner ``O``.  After normalization the signed turning angle ``omega`` from
``alpha`` to ``beta`` lies in ``(0, pi)``, so admissible curves turn left.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DegenerateCorner,
    GeometryError,
    InconsistentCorner,
    NonPositiveBTilde,
    ParallelTangents,
)

POS_TOL = 1e-9
UNIT_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> Point2:
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def dot(self, other: Point2) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point2) -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def rotated(self, angle: float) -> Point2:
        c, s = math.cos(angle), math.sin(angle)
        return Point2(c * self.x - s * self.y, s * self.x + c * self.y)

    def perp(self) -> Point2:
        """Rotation by +pi/2."""
        return Point2(-self.y, self.x)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)


@dataclass(frozen=True, slots=True)
class UnitVec2(Point2):
    """Unit direction vector; construction fails if the norm is off by more than 1e-12."""

    def __post_init__(self):
        Point2.__post_init__(self)
        if abs(self.x * self.x + self.y * self.y - 1.0) > UNIT_TOL:
            raise GeometryError(f"({self.x}, {self.y}) is not a unit vector")

    @property
    def dx(self) -> float:
        return self.x

    @property
    def dy(self) -> float:
        return self.y

    @classmethod
    def normalized(cls, x: float, y: float) -> UnitVec2:
        n = math.hypot(x, y)
        if n == 0.0:
            raise GeometryError("zero direction vector")
        return cls(x / n, y / n)

    @classmethod
    def from_angle(cls, angle: float) -> UnitVec2:
        return cls(math.cos(angle), math.sin(angle))

    def __neg__(self) -> UnitVec2:
        return UnitVec2(-self.x, -self.y)

    def rotated(self, angle: float) -> UnitVec2:
        c, s = math.cos(angle), math.sin(angle)
        return UnitVec2.normalized(c * self.x - s * self.y, s * self.x + c * self.y)

    def perp(self) -> UnitVec2:
        return UnitVec2(-self.y, self.x)


def signed_angle(u: Point2, v: Point2) -> float:
    """Angle in (-pi, pi] turning ``u`` onto ``v``."""
    return math.atan2(u.cross(v), u.dot(v))


@dataclass(frozen=True)
class ProblemInstance:
    """A normalized problem.

    ``flipped`` records that the user's input was traversed backwards
    (endpoints swapped, tangents negated) to make ``omega`` positive.
    """

    A: Point2
    B: Point2
    O: Point2
    alpha: UnitVec2
    beta: UnitVec2
    omega: float
    flipped: bool = field(default=False)

    def __post_init__(self):
        if not 0.0 < self.omega < math.pi:
            raise GeometryError(f"omega={self.omega} outside (0, pi)")
        for p, q, name in ((self.A, self.O, "A,O"), (self.B, self.O, "B,O"), (self.A, self.B, "A,B")):
            if p.dist(q) <= POS_TOL:
                raise DegenerateCorner(f"points {name} coincide")

    @property
    def normal(self) -> UnitVec2:
        """In-plane normal: alpha rotated by +pi/2."""
        return self.alpha.perp()

    def to_local(self, p: Point2) -> complex:
        """Affix of ``p`` in the frame (A, alpha, normal)."""
        d = p - self.A
        return complex(d.dot(self.alpha), d.dot(self.normal))

    def from_local(self, z: complex) -> Point2:
        return self.A + self.alpha * z.real + self.normal * z.imag

    def as_dict(self) -> dict:
        return {
            "A": list(self.A),
            "B": list(self.B),
            "O": list(self.O),
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "omega": self.omega,
            "flipped": self.flipped,
        }


@dataclass(frozen=True)
class FeasibilityReport:
    u0: float
    v0: float
    feasible: bool


@dataclass(frozen=True)
class BoundsReport:
    mu: float
    nu: float
    delta: float
    b_tilde: float

    def as_dict(self) -> dict:
        return {"mu": self.mu, "nu": self.nu, "delta": self.delta, "b_tilde": self.b_tilde}


def _corner(A: Point2, B: Point2, alpha: Point2, beta: Point2) -> Point2:
    den = alpha.cross(beta)
    if abs(den) <= UNIT_TOL:
        raise ParallelTangents(f"tangents are parallel (cross={den:.3e})")
    u = (B - A).cross(beta) / den
    return A + alpha * u


def normalize_problem(
    A: Point2,
    B: Point2,
    alpha: UnitVec2,
    beta: UnitVec2,
    O: Point2 | None = None,
) -> ProblemInstance:
    """Build a :class:`ProblemInstance` with ``omega`` in ``(0, pi)``.

    The corner is the intersection of the two tangent lines.  If ``O`` is
    also given it must agree with that intersection within 1e-9.  When the
    raw turning angle is negative the problem is reversed.
    """
    corner = _corner(A, B, alpha, beta)
    if O is not None and O.dist(corner) > POS_TOL:
        raise InconsistentCorner(
            f"given O=({O.x}, {O.y}) differs from tangent intersection ({corner.x}, {corner.y})"
        )
    if corner.dist(A) <= POS_TOL or corner.dist(B) <= POS_TOL:
        raise DegenerateCorner("corner coincides with an endpoint")
    if A.dist(B) <= POS_TOL:
        raise DegenerateCorner("endpoints coincide")
    omega = signed_angle(alpha, beta)
    if omega > 0:
        return ProblemInstance(A, B, corner, alpha, beta, omega, flipped=False)
    return ProblemInstance(B, A, corner, -beta, -alpha, -omega, flipped=True)


def feasibility_check(inst: ProblemInstance) -> FeasibilityReport:
    u0 = (inst.O - inst.A).dot(inst.alpha)
    v0 = (inst.B - inst.O).dot(inst.beta)
    return FeasibilityReport(u0, v0, u0 > 0 and v0 > 0)


def length_bounds(inst: ProblemInstance) -> BoundsReport:
    """Length envelope ``mu <= L <= nu`` and curvature floor ``delta``.

    ``b_tilde`` is the abscissa of ``B`` in the frame whose first axis is
    ``alpha`` rotated by ``omega / 2``; every admissible tangent makes an
    angle of at most ``omega / 2`` with that axis.
    """
    mu = inst.A.dist(inst.B)
    axis = inst.alpha.rotated(inst.omega / 2)
    b_tilde = (inst.B - inst.A).dot(axis)
    if b_tilde <= 0:
        raise NonPositiveBTilde(f"b_tilde={b_tilde} <= 0")
    nu = b_tilde / math.cos(inst.omega / 2)
    return BoundsReport(mu=mu, nu=nu, delta=inst.omega / nu, b_tilde=b_tilde)


def _pair(doc: dict, key: str) -> tuple[float, float]:
    try:
        x, y = doc[key]
        return float(x), float(y)
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryError(f"field {key!r} must be a pair of numbers") from exc


def instance_from_dict(doc: dict) -> ProblemInstance:
    A = Point2(*_pair(doc, "A"))
    B = Point2(*_pair(doc, "B"))
    alpha = UnitVec2.normalized(*_pair(doc, "alpha"))
    beta = UnitVec2.normalized(*_pair(doc, "beta"))
    O = Point2(*_pair(doc, "O")) if "O" in doc else None
    return normalize_problem(A, B, alpha, beta, O)


def load_instance(path: str | Path) -> ProblemInstance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))
