"""Command line front end.

Exit codes: 0 success, 1 I/O or validation failure, 2 infeasible instance.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .curves import (
    CurvePoint,
    PiecewisePath,
    path_to_dict,
    polyline_path_data,
    render_svg,
    sample_path,
    samples_to_csv,
    svg_path_data,
    validate_membership,
)
from .discrete import DiscreteArcChain, chain_to_path
from .errors import GeometryError, InfeasibleGeometry, MinCurvError
from .exact import ParabolaBaseline, baseline_parabola, build_arc_segment, build_dubins
from .geometry import BoundsReport, Point2, ProblemInstance, length_bounds, load_instance
from .lp import solve_maxmin

DEFAULT_SWEEP = (2, 5, 10, 50, 100, 300)
N_SAMPLES = 1001


@dataclass
class RunConfig:
    command: str
    instance_path: str
    p: int | None = None
    radius: float | None = None
    output: str | None = None
    format: str = "json"
    tol: float = 1e-9
    samples: int = N_SAMPLES


@dataclass
class SolveReport:
    r_a: float
    baseline_min_radius: float
    discrete_min_radius_by_p: dict[int, float | None]
    lengths: dict
    bounds: BoundsReport
    improvement_ratio: float = field(init=False)

    def __post_init__(self):
        self.improvement_ratio = self.r_a / self.baseline_min_radius

    def as_dict(self) -> dict:
        return {
            "r_a": self.r_a,
            "baseline_min_radius": self.baseline_min_radius,
            "discrete_min_radius_by_p": {str(k): v for k, v in self.discrete_min_radius_by_p.items()},
            "lengths": self.lengths,
            "bounds": self.bounds.as_dict(),
            "improvement_ratio": self.improvement_ratio,
        }


class ValidationFailed(MinCurvError):
    pass


def _checked(path: PiecewisePath, inst: ProblemInstance, tol: float, what: str) -> PiecewisePath:
    rep = validate_membership(path, inst, tol)
    if not rep.ok:
        raise ValidationFailed(f"{what} failed validation: " + "; ".join(rep.failures()))
    return path


def _user_oriented(path: PiecewisePath, inst: ProblemInstance) -> PiecewisePath:
    return path.reversed() if inst.flipped else path


def _parabola_points(bp: ParabolaBaseline, inst: ProblemInstance, n: int) -> list[CurvePoint]:
    t = np.linspace(0.0, 1.0, n)
    xy = bp.point(t)
    seg = np.linalg.norm(np.diff(xy, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    d = bp.derivative(t)
    phi = np.unwrap(np.arctan2(d[:, 1], d[:, 0])) - inst.alpha.angle()
    phi -= 2 * math.pi * round(phi[0] / (2 * math.pi))
    curv = 1.0 / bp.radius(t)
    return [CurvePoint(float(s[i]), Point2(*map(float, xy[i])), float(phi[i]), float(curv[i])) for i in range(n)]


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_path(path: PiecewisePath, inst: ProblemInstance, cfg: RunConfig, meta: dict, css: str) -> None:
    shown = _user_oriented(path, inst)
    if cfg.format == "json":
        doc = {"instance": inst.as_dict(), **meta, "path": path_to_dict(shown)}
        _write(json.dumps(doc, indent=2) + "\n", cfg.output)
    elif cfg.format == "csv":
        _write(samples_to_csv(sample_path(shown, cfg.samples)), cfg.output)
    else:
        _write(render_svg([(css, svg_path_data(shown), _sample_xy(shown))]), cfg.output)


def _sample_xy(path: PiecewisePath, n: int = 512) -> np.ndarray:
    return np.array([[c.position.x, c.position.y] for c in sample_path(path, n)])


def run_exact(inst: ProblemInstance, cfg: RunConfig) -> None:
    sol = build_arc_segment(inst)
    _checked(sol.path, inst, cfg.tol, "arc+segment curve")
    meta = {"r_a": sol.r_a, "case_tag": sol.case_tag.value, "segment_length": sol.segment_length}
    _emit_path(sol.path, inst, cfg, meta, "exact")


def run_dubins(inst: ProblemInstance, cfg: RunConfig) -> None:
    if cfg.radius is None:
        raise GeometryError("dubins needs --radius")
    path = build_dubins(inst, cfg.radius)
    _checked(path, inst, cfg.tol, f"Dubins curve R={cfg.radius}")
    _emit_path(path, inst, cfg, {"radius": cfg.radius}, "dubins")


def run_baseline(inst: ProblemInstance, cfg: RunConfig) -> None:
    bp = baseline_parabola(inst)
    pts = _parabola_points(bp, inst, cfg.samples)
    if inst.flipped:
        L = pts[-1].s
        pts = [CurvePoint(L - c.s, c.position, -c.phi, c.curvature) for c in reversed(pts)]
    if cfg.format == "json":
        doc = {
            "instance": inst.as_dict(),
            "min_radius": bp.min_radius,
            "t_min": bp.t_min,
            "length": bp.length(),
            "control_points": [list(p) for p in bp.control_points],
        }
        _write(json.dumps(doc, indent=2) + "\n", cfg.output)
    elif cfg.format == "csv":
        _write(samples_to_csv(pts), cfg.output)
    else:
        xy = np.array([[c.position.x, c.position.y] for c in pts])
        _write(render_svg([("baseline", polyline_path_data(xy), xy)]), cfg.output)


def run_discrete(inst: ProblemInstance, cfg: RunConfig) -> None:
    if cfg.p is None:
        raise GeometryError("discrete needs --p")
    chain = solve_maxmin(inst, cfg.p)
    path = _checked(chain_to_path(chain, inst), inst, max(cfg.tol, 1e-9), f"{cfg.p}-arc chain")
    if cfg.format == "json":
        doc = {
            "instance": inst.as_dict(),
            "chain": chain.to_dict(),
            "min_radius": chain.min_radius,
            "length": chain.length,
        }
        _write(json.dumps(doc, indent=2) + "\n", cfg.output)
    elif cfg.format == "csv":
        _write(chain.to_csv(), cfg.output)
    else:
        shown = _user_oriented(path, inst)
        _write(render_svg([("discrete", svg_path_data(shown), _sample_xy(shown))]), cfg.output)


def build_report(inst: ProblemInstance, sweep=DEFAULT_SWEEP) -> tuple[SolveReport, dict]:
    """Solve everything for ``inst``; also returns the curves for plotting."""
    sol = build_arc_segment(inst)
    bp = baseline_parabola(inst)
    by_p: dict[int, float | None] = {}
    disc_len: dict[str, float] = {}
    chains: dict[int, DiscreteArcChain] = {}
    for p in sweep:
        try:
            ch = solve_maxmin(inst, p)
        except InfeasibleGeometry:
            by_p[p] = None
            continue
        chains[p] = ch
        by_p[p] = ch.min_radius
        disc_len[str(p)] = ch.length
    lengths = {"exact": sol.path.total_length, "baseline": bp.length(), "discrete": disc_len}
    rep = SolveReport(sol.r_a, bp.min_radius, by_p, lengths, length_bounds(inst))
    return rep, {"exact": sol, "baseline": bp, "chains": chains}


def format_table(rep: SolveReport) -> str:
    rows = [
        ("R_a (arc+segment)", f"{rep.r_a:.10f}"),
        ("parabola min radius", f"{rep.baseline_min_radius:.10f}"),
        ("improvement ratio", f"{rep.improvement_ratio:.6f}"),
        ("length bounds [mu, nu]", f"[{rep.bounds.mu:.6f}, {rep.bounds.nu:.6f}]"),
        ("curvature floor delta", f"{rep.bounds.delta:.6f}"),
        ("arc+segment length", f"{rep.lengths['exact']:.6f}"),
        ("parabola length", f"{rep.lengths['baseline']:.6f}"),
    ]
    for p, t in rep.discrete_min_radius_by_p.items():
        rows.append((f"p={p} max-min radius", "infeasible" if t is None else f"{t:.10f}"))
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows) + "\n"


def run_report(inst: ProblemInstance, cfg: RunConfig) -> None:
    sweep = (cfg.p,) if cfg.p is not None else DEFAULT_SWEEP
    rep, curves = build_report(inst, sweep)
    exact_path = _checked(curves["exact"].path, inst, cfg.tol, "arc+segment curve")
    doc = {"instance": inst.as_dict(), **rep.as_dict()}
    if cfg.format == "svg":
        layers = []
        shown = _user_oriented(exact_path, inst)
        layers.append(("exact", svg_path_data(shown), _sample_xy(shown)))
        if curves["chains"]:
            p = max(curves["chains"])
            path = _checked(chain_to_path(curves["chains"][p], inst), inst, max(cfg.tol, 1e-9), f"{p}-arc chain")
            shown = _user_oriented(path, inst)
            layers.append(("discrete", svg_path_data(shown), _sample_xy(shown)))
        xy = curves["baseline"].sample(256)
        layers.append(("baseline", polyline_path_data(xy), xy))
        _write(render_svg(layers), cfg.output)
        return
    text = json.dumps(doc, indent=2) + "\n"
    if cfg.output is None or cfg.output == "-":
        sys.stdout.write(format_table(rep))
        sys.stdout.write(text)
    else:
        sys.stdout.write(format_table(rep))
        _write(text, cfg.output)


COMMANDS = {
    "exact": run_exact,
    "dubins": run_dubins,
    "baseline": run_baseline,
    "discrete": run_discrete,
    "report": run_report,
}


def run(cfg: RunConfig) -> int:
    try:
        inst = load_instance(cfg.instance_path)
        COMMANDS[cfg.command](inst, cfg)
    except InfeasibleGeometry as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, MinCurvError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", required=True, help="instance JSON file")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("svg", "csv", "json"), default="json")
    common.add_argument("--tol", type=float, default=1e-9, help="membership tolerance")
    common.add_argument("--samples", type=int, default=N_SAMPLES, help="CSV sample count")

    parser = argparse.ArgumentParser(prog="mincurv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("exact", parents=[common], help="arc+segment curve of largest minimum radius")
    d = sub.add_parser("dubins", parents=[common], help="left-straight-left curve of given radius")
    d.add_argument("--radius", type=float, required=True)
    sub.add_parser("baseline", parents=[common], help="quadratic Bezier through the corner")
    d = sub.add_parser("discrete", parents=[common], help="max-min radius chain of p equal-angle arcs")
    d.add_argument("--p", type=int, required=True)
    d = sub.add_parser("report", parents=[common], help="summary table and JSON for all curves")
    d.add_argument("--p", type=int, default=None, help="solve this p only instead of the default sweep")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        instance_path=args.instance,
        p=getattr(args, "p", None),
        radius=getattr(args, "radius", None),
        output=args.out,
        format=args.format,
        tol=args.tol,
        samples=args.samples,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
