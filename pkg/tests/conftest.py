import math

import numpy as np
import pytest

from mincurv.geometry import Point2, UnitVec2, normalize_problem

S2 = math.sqrt(2)
RA_SQUARE = (S2 - 1) / 2


def square_corner():
    """Corner of a unit square: A=(1/2,-1/2), O=(0,0), B=(0,-1/2)."""
    return normalize_problem(
        Point2(0.5, -0.5), Point2(0.0, -0.5), UnitVec2(-S2 / 2, S2 / 2), UnitVec2(0.0, -1.0)
    )


def random_instance(rng, omega_range=(0.1, math.pi - 0.1), symmetric=False):
    O = Point2(*rng.uniform(-3, 3, 2))
    heading = rng.uniform(-math.pi, math.pi)
    omega = rng.uniform(*omega_range)
    alpha = UnitVec2.from_angle(heading)
    beta = UnitVec2.from_angle(heading + omega)
    u0, v0 = rng.uniform(0.05, 3.0, 2)
    if symmetric:
        v0 = u0
    return normalize_problem(O - alpha * u0, O + beta * v0, alpha, beta)


def random_instances(n, seed):
    rng = np.random.default_rng(seed)
    return [random_instance(rng, symmetric=(k % 10 == 0)) for k in range(n)]


@pytest.fixture
def square():
    return square_corner()
