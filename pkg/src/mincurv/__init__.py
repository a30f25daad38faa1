"""Curves of nonnegative curvature joining two tangent-constrained endpoints.

The largest achievable minimum radius among arc+segment and Dubins curves,
a parabolic baseline, and equal-angle arc chains optimized by linear
programming.
"""

from .curves import (
    ArcPiece,
    CurvePoint,
    LinePiece,
    PiecewisePath,
    ValidationReport,
    curvature_profile,
    half_plane_check,
    sample_path,
    validate_membership,
)
from .discrete import (
    DiscreteArcChain,
    EndpointSystem,
    assemble_endpoint_system,
    chain_to_path,
    evaluate_arc_chain,
)
from .exact import CaseTag, ExactSolution, ParabolaBaseline, baseline_parabola, build_arc_segment, build_dubins, compute_ra
from .geometry import (
    BoundsReport,
    FeasibilityReport,
    Point2,
    ProblemInstance,
    UnitVec2,
    feasibility_check,
    length_bounds,
    load_instance,
    normalize_problem,
)
from .lp import LpSolution, LpStandardForm, LpStatus, solve_lp, solve_maxmin, solve_minlength

__version__ = "0.1.0"
