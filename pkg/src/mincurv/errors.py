"""Exception hierarchy shared by every module of the package."""


class MinCurvError(Exception):
    """Base class for all package errors."""


class GeometryError(MinCurvError, ValueError):
    """Malformed or inconsistent input geometry."""


class ParallelTangents(GeometryError):
    pass


class DegenerateCorner(GeometryError):
    pass


class InconsistentCorner(GeometryError):
    """A user-supplied corner disagrees with the tangent-line intersection."""


class InfeasibleGeometry(MinCurvError):
    """No admissible curve exists for the instance."""


class NonPositiveBTilde(GeometryError, InfeasibleGeometry):
    pass


class RadiusTooLarge(InfeasibleGeometry):
    pass


class NegativeTurning(GeometryError):
    pass


class EndpointMismatch(MinCurvError):
    pass


class DiscreteInfeasible(InfeasibleGeometry):
    pass


class NumericalBreakdown(MinCurvError, ArithmeticError):
    pass
