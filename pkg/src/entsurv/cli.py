"""Command-line front end: parameter sweeps, negativity tables, figure data.

Output is deterministic: floats are printed with 12 significant digits, rows
are assembled in input order regardless of worker scheduling, and reruns of
the same configuration produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import est, figures, models
from .entanglement import choi, negativity
from .gaussian import (
    GaussianModelParams,
    classify,
    eb_boundary_value,
    gaussian_est,
    is_eb,
    model_fg,
)
from .lindblad import build_generator
from .qmat import Propagator

SWEEP_SCHEMA = "entsurv-sweep v1"
NEGATIVITY_SCHEMA = "entsurv-negativity v1"
CLASSIFY_SCHEMA = "entsurv-classify v1"

QUBIT_MODELS = ("phase-flip", "gad", "depolarizing")
ALL_MODELS = QUBIT_MODELS + ("gaussian-gad",)


@dataclass
class RunConfig:
    """One sweep invocation: model, parameter grids and output policy."""

    model: str
    kappas: list[float]
    thetas: list[float]
    n_means: list[float]
    gamma: float = 1.0
    horizon: float | None = None
    fmt: str = "csv"
    workers: int = 1
    output: str | None = None

    def __post_init__(self):
        if self.model not in ALL_MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if not self.kappas or not self.thetas or not self.n_means:
            raise ValueError("parameter grids must be non-empty")
        if self.horizon is not None and self.horizon <= 0:
            raise ValueError("horizon must be positive")
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")


def parse_grid(spec: str) -> list[float]:
    """Parse "a:b:n" as n points from a to b, or a comma-separated list."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:count, got {spec!r}")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValueError("range count must be at least 1")
        return [float(x) for x in np.linspace(start, stop, count)]
    return [float(x) for x in spec.split(",") if x.strip()]


def default_horizon(gamma: float) -> float | None:
    """Horizon in time units; EST_HORIZON (rescaled units) overrides 50/gamma."""
    env = os.environ.get("EST_HORIZON")
    if env is None:
        return None
    if gamma == 0:
        return None
    return float(env) / gamma


def fmt_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) and math.isnan(x):
        return ""
    return "%.12g" % x


def write_table(schema: str, columns: list[str], rows: list[list], fmt: str,
                output: str | None) -> None:
    if fmt == "csv":
        lines = [f"# {schema}", ",".join(columns)]
        for row in rows:
            lines.append(",".join(fmt_value(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        body = {
            "schema": schema,
            "columns": columns,
            "rows": [
                [None if fmt_value(v) == "" else
                 (v if isinstance(v, str) else float(fmt_value(v)))
                 for v in row]
                for row in rows
            ],
        }
        text = json.dumps(body, indent=1) + "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _sweep_job(args: tuple):
    """One sweep point; runs in worker processes, must stay top-level."""
    model, kappa, theta, n_mean, gamma, horizon = args
    try:
        if model == "gaussian-gad":
            res = gaussian_est(GaussianModelParams(n_mean, kappa, theta, gamma), horizon)
        else:
            if model == "phase-flip":
                spec = models.phase_flip_spec(models.PhaseFlipParams(kappa, theta), gamma)
            elif model == "gad":
                spec = models.gad_spec(models.GadParams(n_mean, kappa, theta), gamma)
            else:
                spec = models.depolarizing_spec(kappa, theta, gamma)
            res = est.solve_est(build_generator(spec), gamma, horizon)
        return res, None
    except Exception as exc:  # noqa: BLE001 - row-level error reporting is the contract
        return None, str(exc)


def run_sweep(cfg: RunConfig) -> tuple[list[str], list[list], int]:
    columns = ["model", "kappa", "theta", "n_mean", "gamma", "status",
               "T_ent", "residual", "iterations"]
    grid = []
    for n_mean in (cfg.n_means if cfg.model in ("gad", "gaussian-gad") else [None]):
        for theta in cfg.thetas:
            for kappa in cfg.kappas:
                grid.append((cfg.model, kappa, theta, n_mean, cfg.gamma, cfg.horizon))
    if cfg.workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_sweep_job, grid))
    else:
        outcomes = [_sweep_job(job) for job in grid]
    rows, warnings = [], 0
    for (model, kappa, theta, n_mean, gamma, _), (res, err) in zip(grid, outcomes):
        if err is not None:
            rows.append([model, kappa, theta, n_mean, gamma, "error", None, None, None])
            warnings += 1
            print(f"warning: solver failed at kappa={kappa}: {err}", file=sys.stderr)
            continue
        rows.append([
            model, kappa, theta, n_mean, gamma, res.status,
            res.t_rescaled, res.residual if res.finite else None, res.iterations,
        ])
    return columns, rows, warnings


# ---------------------------------------------------------------------------
# negativity tables
# ---------------------------------------------------------------------------


def _closed_form_negativity(model: str, kappa: float, theta: float, n_mean: float):
    """Per-tau closed form where one exists, else None."""
    if model == "phase-flip" and abs(theta - math.pi / 2) < 1e-12:
        p = models.PhaseFlipParams(kappa, theta)
        return lambda tau: models.pf_negativity(p, tau)
    if model == "gad" and kappa == 0.0:
        p = models.GadParams(n_mean, 0.0, theta)
        return lambda tau: models.gad_negativity(p, tau)
    if model == "depolarizing":
        return models.depolarizing_negativity
    return None


def run_negativity(model: str, kappa: float, theta: float, n_mean: float,
                   gamma: float, tmax: float, points: int) -> tuple[list[str], list[list]]:
    if model == "phase-flip":
        spec = models.phase_flip_spec(models.PhaseFlipParams(kappa, theta), gamma)
    elif model == "gad":
        spec = models.gad_spec(models.GadParams(n_mean, kappa, theta), gamma)
    elif model == "depolarizing":
        spec = models.depolarizing_spec(kappa, theta, gamma)
    else:
        raise ValueError(f"negativity tables cover the qubit models, not {model!r}")
    prop = Propagator(build_generator(spec))
    closed = _closed_form_negativity(model, kappa, theta, n_mean)
    taus = np.linspace(0.0, tmax, points)
    rows = []
    for tau in taus:
        tau = float(tau)
        num = negativity(choi(prop.at(tau / gamma)))
        rows.append([tau, num, closed(tau) if closed is not None else None])
    return ["tau", "negativity_numeric", "negativity_closed_form"], rows


# ---------------------------------------------------------------------------
# gaussian classification tables
# ---------------------------------------------------------------------------


def run_classify(n_mean: float, kappa: float, theta: float, gamma: float,
                 times: list[float]) -> tuple[list[str], list[list]]:
    p = GaussianModelParams(n_mean, kappa, theta, gamma)
    rows = []
    for t in times:
        ch = model_fg(p, t)
        c = classify(ch)
        rows.append([
            t, c.label, c.k, c.q, "yes" if is_eb(ch) else "no",
            eb_boundary_value(ch),
            float(np.linalg.eigvalsh(ch.cpt_matrix())[0]),
        ])
    return ["t", "class", "k", "q", "eb", "eb_boundary", "cpt_min_eig"], rows


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="est",
        description="Entanglement survival time of Markovian qubit and Gaussian semigroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="survival time over parameter grids")
    sw.add_argument("--model", required=True, choices=ALL_MODELS)
    sw.add_argument("--kappa", required=True, help="grid: start:stop:count or comma list")
    sw.add_argument("--theta", default=str(math.pi / 2), help="tilt/mixing angle grid")
    sw.add_argument("--N", default="1", help="mean occupation grid (gad, gaussian-gad)")
    sw.add_argument("--gamma", type=float, default=1.0)
    sw.add_argument("--horizon", type=float, default=None, help="search horizon in time units")
    sw.add_argument("--workers", type=int, default=1)
    _add_common(sw)

    ng = sub.add_parser("negativity", help="negativity decay table for a qubit model")
    ng.add_argument("--model", required=True, choices=QUBIT_MODELS)
    ng.add_argument("--kappa", type=float, default=0.0)
    ng.add_argument("--theta", type=float, default=math.pi / 2)
    ng.add_argument("--N", type=float, default=1.0)
    ng.add_argument("--gamma", type=float, default=1.0)
    ng.add_argument("--tmax", type=float, default=5.0, help="largest rescaled time")
    ng.add_argument("--points", type=int, default=200)
    _add_common(ng)

    fg = sub.add_parser("figure", help="regenerate the data behind one report panel")
    fg.add_argument("--id", required=True, help=f"panel id, one of {sorted(figures.FIGURES)}")
    fg.add_argument("--outdir", default=".", help="directory for the data (and image) files")
    fg.add_argument("--workers", type=int, default=1)
    fg.add_argument("--no-render", action="store_true", help="skip the rendered image")
    fg.add_argument("--format", choices=("csv", "json"), default="csv")

    cl = sub.add_parser("classify-gaussian", help="normal-form class of the model channel")
    cl.add_argument("--N", type=float, required=True)
    cl.add_argument("--kappa", type=float, default=0.0)
    cl.add_argument("--theta", type=float, default=0.0)
    cl.add_argument("--gamma", type=float, default=1.0)
    cl.add_argument("--t", required=True, help="time grid: start:stop:count or comma list")
    _add_common(cl)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = RunConfig(
                model=args.model,
                kappas=parse_grid(args.kappa),
                thetas=parse_grid(args.theta),
                n_means=parse_grid(args.N),
                gamma=args.gamma,
                horizon=args.horizon if args.horizon is not None else default_horizon(args.gamma),
                fmt=args.format,
                workers=args.workers,
                output=args.output,
            )
            columns, rows, _ = run_sweep(cfg)
            write_table(SWEEP_SCHEMA, columns, rows, cfg.fmt, cfg.output)
            return 0
        if args.command == "negativity":
            columns, rows = run_negativity(
                args.model, args.kappa, args.theta, args.N, args.gamma,
                args.tmax, args.points,
            )
            write_table(NEGATIVITY_SCHEMA, columns, rows, args.format, args.output)
            return 0
        if args.command == "figure":
            columns, rows = figures.build_figure(args.id, args.workers)
            os.makedirs(args.outdir, exist_ok=True)
            ext = "csv" if args.format == "csv" else "json"
            data_path = os.path.join(args.outdir, f"figure_{args.id}.{ext}")
            write_table(f"{figures.SCHEMA_VERSION} panel {args.id}", columns, rows,
                        args.format, data_path)
            if not args.no_render:
                figures.render_figure(
                    args.id, columns, rows, os.path.join(args.outdir, f"figure_{args.id}.png")
                )
            print(data_path)
            return 0
        if args.command == "classify-gaussian":
            columns, rows = run_classify(
                args.N, args.kappa, args.theta, args.gamma, parse_grid(args.t)
            )
            write_table(CLASSIFY_SCHEMA, columns, rows, args.format, args.output)
            return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
