"""Dense two-phase primal simplex and the arc-chain problems built on it.

Problems are ``maximize c.x  s.t.  A x = b,  x >= lb``.  Bland's rule is
used for both the entering and the leaving variable, so the method
terminates on degenerate problems.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from .discrete import DiscreteArcChain, assemble_endpoint_system
from .errors import DiscreteInfeasible, NumericalBreakdown
from .geometry import ProblemInstance

log = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
TINY_PIVOT = 1e-11
COST_TOL = 1e-10
FEAS_TOL = 1e-9


class LpStatus(enum.Enum):
    Optimal = "Optimal"
    Infeasible = "Infeasible"
    Unbounded = "Unbounded"


@dataclass(frozen=True)
class LpStandardForm:
    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower_bounds: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        A = np.atleast_2d(np.asarray(self.eq_matrix, dtype=float))
        b = np.asarray(self.eq_rhs, dtype=float).reshape(-1)
        if A.size == 0:
            A = np.zeros((0, c.size))
        lb = np.zeros(c.size) if self.lower_bounds is None else np.asarray(self.lower_bounds, dtype=float)
        if A.shape != (b.size, c.size) or lb.shape != c.shape:
            raise ValueError(f"inconsistent shapes: A{A.shape}, b{b.shape}, c{c.shape}, lb{lb.shape}")
        if b.size > c.size:
            raise ValueError("more equality rows than variables")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c)) and np.all(np.isfinite(lb))):
            raise ValueError("non-finite LP data")
        for name, val in (("objective", c), ("eq_matrix", A), ("eq_rhs", b), ("lower_bounds", lb)):
            object.__setattr__(self, name, val)

    @property
    def shape(self) -> tuple[int, int]:
        return self.eq_matrix.shape


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray
    objective_value: float
    iterations: int
    basis: tuple[int, ...] = field(default=())


class _Tableau:
    """Canonical-form tableau ``T x = rhs`` with basis ``basis`` and reduced costs ``z``."""

    def __init__(self, T: np.ndarray, rhs: np.ndarray, basis: list[int]):
        self.T = T
        self.rhs = rhs
        self.basis = basis
        self.iterations = 0

    def pivot(self, r: int, j: int, z: np.ndarray) -> None:
        T, rhs = self.T, self.rhs
        piv = T[r, j]
        T[r] /= piv
        rhs[r] /= piv
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        rhs -= col * rhs[r]
        T[:, j] = 0.0
        T[r, j] = 1.0
        zj = z[j]
        z -= zj * T[r]
        z[j] = 0.0
        self.basis[r] = j
        self.iterations += 1

    def run(self, z: np.ndarray, allowed: np.ndarray, max_iter: int) -> bool:
        """Maximize; returns False when unbounded.  ``z`` holds reduced costs."""
        while True:
            if self.iterations >= max_iter:
                raise NumericalBreakdown(f"iteration limit {max_iter} reached")
            cand = np.flatnonzero((z > COST_TOL) & allowed)
            if cand.size == 0:
                return True
            j = int(cand[0])
            col = self.T[:, j]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                if np.any(col > TINY_PIVOT):
                    raise NumericalBreakdown(f"only tiny pivots available in column {j}")
                return False
            ratios = self.rhs[rows] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            self.pivot(r, j, z)


def _reduced_costs(c: np.ndarray, tab: _Tableau) -> np.ndarray:
    cb = c[tab.basis]
    return c - cb @ tab.T


def solve_lp(problem: LpStandardForm, max_iter: int = 100_000) -> LpSolution:
    """Two-phase simplex.  Optimal solutions are vertices."""
    c, A, b, lb = problem.objective, problem.eq_matrix, problem.eq_rhs, problem.lower_bounds
    m, n = A.shape
    A = A.copy()
    rhs = b - A @ lb  # shift x' = x - lb >= 0
    neg = rhs < 0
    A[neg] *= -1
    rhs[neg] *= -1

    # crash basis from unit-like columns, then artificials for the rest
    basis = [-1] * m
    nz = A != 0
    single = np.flatnonzero(nz.sum(axis=0) == 1)
    for j in single:
        i = int(np.flatnonzero(nz[:, j])[0])
        if basis[i] != -1:
            continue
        a = A[i, j]
        if a < 0:
            if rhs[i] != 0:
                continue
            A[i] *= -1
            a = -a
        A[i] /= a
        rhs[i] /= a
        basis[i] = int(j)
    art_rows = [i for i in range(m) if basis[i] == -1]
    n_art = len(art_rows)
    T = np.zeros((m, n + n_art))
    T[:, :n] = A
    for k, i in enumerate(art_rows):
        T[i, n + k] = 1.0
        basis[i] = n + k
    tab = _Tableau(T, rhs.copy(), basis)

    scale = 1.0 + (np.max(np.abs(b)) if m else 0.0)
    if n_art:
        c1 = np.zeros(n + n_art)
        c1[n:] = -1.0
        z = _reduced_costs(c1, tab)
        tab.run(z, np.ones(n + n_art, dtype=bool), max_iter)
        infeas = float(np.sum(tab.rhs[[i for i in range(m) if tab.basis[i] >= n]]))
        if infeas > FEAS_TOL * scale:
            log.debug("phase 1 ended with infeasibility %.3e", infeas)
            return LpSolution(LpStatus.Infeasible, np.full(n, np.nan), float("nan"), tab.iterations)
        # drive remaining artificials out of the basis; drop redundant rows
        keep = []
        dummy = np.zeros(n + n_art)
        for i in range(m):
            if tab.basis[i] < n:
                keep.append(i)
                continue
            cols = np.flatnonzero(np.abs(tab.T[i, :n]) > PIVOT_TOL)
            if cols.size:
                tab.pivot(i, int(cols[0]), dummy)
                keep.append(i)
        tab.T = tab.T[keep][:, :n]
        tab.rhs = tab.rhs[keep]
        tab.basis = [tab.basis[i] for i in keep]
        rows_kept = keep
    else:
        rows_kept = list(range(m))

    z = _reduced_costs(c, tab)
    bounded = tab.run(z, np.ones(n, dtype=bool), max_iter)
    x = np.zeros(n)
    x[tab.basis] = _polish(A[rows_kept], rhs[rows_kept], tab.basis, tab.rhs)
    x += lb
    if not bounded:
        return LpSolution(LpStatus.Unbounded, x, float("inf"), tab.iterations, tuple(tab.basis))
    return LpSolution(LpStatus.Optimal, x, float(c @ x), tab.iterations, tuple(tab.basis))


def _polish(A: np.ndarray, rhs: np.ndarray, basis: list[int], fallback: np.ndarray) -> np.ndarray:
    """Recompute basic values from the original rows to shed pivoting error."""
    if not basis:
        return fallback
    B = A[:, basis]
    try:
        xb = np.linalg.solve(B, rhs)
    except np.linalg.LinAlgError:
        return np.maximum(fallback, 0.0)
    if not np.all(np.isfinite(xb)) or np.max(np.abs(xb - fallback)) > 1e-6 * (1 + np.max(np.abs(fallback))):
        return np.maximum(fallback, 0.0)
    return np.maximum(xb, 0.0)


def solve_maxmin(inst: ProblemInstance, p: int) -> DiscreteArcChain:
    """Equal-angle chain of ``p`` arcs maximizing its smallest radius.

    Epigraph form over ``(R, t, s)``: maximize ``t`` subject to the
    endpoint system and ``R_k - t - s_k = 0``, all variables nonnegative.
    """
    sysm = assemble_endpoint_system(inst, p)
    n = 2 * p + 1
    A = np.zeros((p + 2, n))
    A[:2, :p] = sysm.matrix
    A[2:, :p] = np.eye(p)
    A[2:, p] = -1.0
    A[2:, p + 1:] = -np.eye(p)
    b = np.concatenate([sysm.rhs, np.zeros(p)])
    c = np.zeros(n)
    c[p] = 1.0
    sol = solve_lp(LpStandardForm(c, A, b))
    if sol.status is not LpStatus.Optimal:
        raise DiscreteInfeasible(f"no {p}-arc chain closes on B ({sol.status.value})")
    radii = sol.x[:p]
    if radii.min() <= 0:
        raise DiscreteInfeasible(f"no {p}-arc chain with positive radii closes on B")
    return DiscreteArcChain.for_instance(inst, radii)


def solve_minlength(inst: ProblemInstance, p: int, r_min: float) -> DiscreteArcChain:
    """Shortest equal-angle chain whose radii all stay above ``r_min``."""
    if r_min < 0:
        raise ValueError("r_min must be nonnegative")
    sysm = assemble_endpoint_system(inst, p)
    sol = solve_lp(LpStandardForm(-np.ones(p), sysm.matrix, sysm.rhs, np.full(p, float(r_min))))
    if sol.status is not LpStatus.Optimal:
        raise DiscreteInfeasible(f"no {p}-arc chain with radii >= {r_min} closes on B ({sol.status.value})")
    return DiscreteArcChain.for_instance(inst, sol.x)
