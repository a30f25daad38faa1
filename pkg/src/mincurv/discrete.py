"""Chains of circular arcs: forward evaluation and the equal-angle endpoint system.

Points are handled as complex affixes in the frame (A, alpha, normal)
where ``normal`` is alpha rotated by +pi/2.  An arc of turning ``theta``
and length ``L`` leaving direction ``u`` displaces the point by
``sinc(theta/2) e^{i theta/2} u L``; for equal turning ``theta0`` and
radius ``R`` that is ``i (1 - e^{i theta0}) u R``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .curves import ArcPiece, PiecewisePath, validate_membership
from .errors import EndpointMismatch, GeometryError, NegativeTurning
from .geometry import ProblemInstance

CLOSURE_TOL = 1e-6


@dataclass(frozen=True)
class DiscreteArcChain:
    """``p`` arcs sharing the turning angle ``omega / p``.

    Radii are nonnegative; a zero radius only appears in degenerate
    minimum-length chains and cannot be turned into a path.
    """

    p: int
    theta0: float
    radii: tuple[float, ...]

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if self.p < 1 or len(radii) != self.p:
            raise GeometryError(f"expected {self.p} radii, got {len(radii)}")
        if any(not (r >= 0 and math.isfinite(r)) for r in radii):
            raise GeometryError("radii must be finite and nonnegative")

    @classmethod
    def for_instance(cls, inst: ProblemInstance, radii: Sequence[float]) -> DiscreteArcChain:
        p = len(radii)
        return cls(p, inst.omega / p, tuple(radii))

    @property
    def min_radius(self) -> float:
        return min(self.radii)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(r * self.theta0 for r in self.radii)

    @property
    def length(self) -> float:
        return self.theta0 * math.fsum(self.radii)

    def refined(self) -> DiscreteArcChain:
        """Split every arc in two halves of the same radius."""
        return DiscreteArcChain(2 * self.p, self.theta0 / 2, tuple(r for r in self.radii for _ in (0, 1)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "theta0", "R_k", "L_k"])
        for k, r in enumerate(self.radii):
            w.writerow([k, repr(self.theta0), repr(r), repr(r * self.theta0)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"p": self.p, "theta0": self.theta0, "radii": list(self.radii)}

    @classmethod
    def from_dict(cls, doc: dict) -> DiscreteArcChain:
        return cls(int(doc["p"]), float(doc["theta0"]), tuple(doc["radii"]))

    @classmethod
    def from_json(cls, text: str) -> DiscreteArcChain:
        doc = json.loads(text)
        return cls.from_dict(doc.get("chain", doc))


@dataclass(frozen=True)
class EndpointSystem:
    matrix: np.ndarray  # 2 x p
    rhs: np.ndarray  # 2

    def residual(self, radii: Sequence[float]) -> float:
        return float(np.max(np.abs(self.matrix @ np.asarray(radii, dtype=float) - self.rhs)))


@dataclass(frozen=True)
class ChainEvaluation:
    endpoint_affix: complex
    total_turning: float


def evaluate_arc_chain(thetas: Sequence[float], lengths: Sequence[float]) -> ChainEvaluation:
    """Endpoint of a general chain of arcs and segments leaving the origin along +x.

    A zero turning angle is a straight segment.
    """
    th = np.asarray(thetas, dtype=float)
    ln = np.asarray(lengths, dtype=float)
    if th.shape != ln.shape or th.ndim != 1 or th.size == 0:
        raise ValueError("thetas and lengths must be nonempty sequences of equal length")
    if np.any(th < 0):
        raise NegativeTurning(f"negative turning angle at index {int(np.argmax(th < 0))}")
    if np.any(ln <= 0):
        raise ValueError("lengths must be positive")
    phi = np.concatenate([[0.0], np.cumsum(th)[:-1]])
    gamma = np.sinc(th / (2 * np.pi)) * np.exp(0.5j * th)
    b = np.sum(gamma * np.exp(1j * phi) * ln)
    return ChainEvaluation(complex(b), float(math.fsum(th)))


def endpoint_coefficients(omega: float, p: int) -> np.ndarray:
    theta0 = omega / p
    k = np.arange(p)
    return 1j * (1 - np.exp(1j * theta0)) * np.exp(1j * k * theta0)


def assemble_endpoint_system(inst: ProblemInstance, p: int) -> EndpointSystem:
    if p < 2:
        raise ValueError("p must be at least 2")
    c = endpoint_coefficients(inst.omega, p)
    b = inst.to_local(inst.B)
    return EndpointSystem(np.vstack([c.real, c.imag]), np.array([b.real, b.imag]))


def chain_to_path(chain: DiscreteArcChain, inst: ProblemInstance, tol: float = CLOSURE_TOL) -> PiecewisePath:
    """Lay the arcs end to end from A along alpha and check closure on B."""
    if any(r <= 0 for r in chain.radii):
        raise GeometryError("chain has a zero radius; it is not a smooth path")
    if abs(chain.theta0 * chain.p - inst.omega) > 1e-12:
        raise GeometryError("chain turning does not match the instance")
    pieces = []
    cur = inst.A
    heading0 = inst.alpha.angle()
    for k, r in enumerate(chain.radii):
        h = heading0 + k * chain.theta0
        center = cur + inst.alpha.rotated(k * chain.theta0).perp() * r
        arc = ArcPiece(center, r, h - math.pi / 2, chain.theta0)
        pieces.append(arc)
        cur = arc.end
    miss = cur.dist(inst.B)
    if miss > tol:
        raise EndpointMismatch(f"chain ends {miss:.3e} away from B")
    path = PiecewisePath(tuple(pieces))
    rep = validate_membership(path, inst, tol)
    if not rep.ok:
        raise EndpointMismatch("; ".join(rep.failures()))
    return path
