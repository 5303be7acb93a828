"""Panel catalog: grids, data tables and optional rendering for the report figures.

The published panels do not tabulate their grids, so the ranges below are
chosen to reproduce each panel visually and are versioned with the data
schema; regenerating a figure id always yields the same rows.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

import numpy as np

from . import est, models
from .gaussian import GaussianModelParams, est_large_kappa_limit, gaussian_est
from .lindblad import build_generator

SCHEMA_VERSION = "entsurv-figures v1"

_PF_THETA = math.pi / 2


def _parallel_map(fn: Callable, jobs: list, workers: int) -> list:
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def _qubit_job(args: tuple) -> est.EstResult:
    gen, gamma, horizon = args
    return est.solve_est(gen, gamma, horizon)


def _gaussian_job(args: tuple) -> est.EstResult:
    n_mean, kappa, theta, gamma, horizon = args
    return gaussian_est(GaussianModelParams(n_mean, kappa, theta, gamma), horizon)


def _pf_gen(kappa: float, theta: float = _PF_THETA) -> np.ndarray:
    return build_generator(models.phase_flip_spec(models.PhaseFlipParams(kappa, theta)))


def _gad_gen(n_mean: float, kappa: float, theta: float) -> np.ndarray:
    return build_generator(models.gad_spec(models.GadParams(n_mean, kappa, theta)))


def _tent(res: est.EstResult) -> float | None:
    return res.t_rescaled if res.finite else None


def figure_1(workers: int = 1) -> tuple[list[str], list[list]]:
    """Negativity decay of the driven phase flip for a few driving ratios."""
    kappas = [0.0, 0.25, 1.0, 4.0]
    taus = np.linspace(0.0, 5.0, 201)
    rows = []
    for kappa in kappas:
        p = models.PhaseFlipParams(kappa)
        for tau in taus:
            rows.append([kappa, tau, models.pf_negativity(p, float(tau))])
    return ["kappa", "tau", "negativity"], rows


def figure_2a(workers: int = 1) -> tuple[list[str], list[list]]:
    """Phase-flip survival time against driving ratio, with the analytic bounds."""
    kappas = np.geomspace(0.05, 3.0, 120)
    jobs = [(_pf_gen(float(k)), 1.0, None) for k in kappas]
    results = _parallel_map(_qubit_job, jobs, workers)
    rows = []
    for kappa, res in zip(kappas, results):
        lower = upper = None
        if kappa >= 0.25:
            lower, upper = models.pf_bounds(float(kappa))
            if not math.isfinite(upper):
                upper = None
        rows.append([float(kappa), res.status, _tent(res), lower, upper])
    return ["kappa", "status", "T_ent", "lower_bound", "upper_bound"], rows


def _qubit_surface(
    gens: Callable[[float, float], np.ndarray],
    kappas: Iterable[float],
    thetas: Iterable[float],
    workers: int,
) -> tuple[list[str], list[list]]:
    grid = [(float(k), float(th)) for k in kappas for th in thetas]
    jobs = [(gens(k, th), 1.0, None) for k, th in grid]
    results = _parallel_map(_qubit_job, jobs, workers)
    rows = [[k, th, res.status, _tent(res)] for (k, th), res in zip(grid, results)]
    return ["kappa", "theta", "status", "T_ent"], rows


def figure_2b(workers: int = 1) -> tuple[list[str], list[list]]:
    """Phase-flip survival-time surface over driving ratio and tilt angle."""
    kappas = np.linspace(0.1, 3.0, 25)
    thetas = np.linspace(0.1, math.pi / 2, 15)
    return _qubit_surface(lambda k, th: _pf_gen(k, th), kappas, thetas, workers)


def figure_3a(workers: int = 1) -> tuple[list[str], list[list]]:
    """Amplitude damping (N = 0): survival time against driving for several tilts."""
    thetas = [math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2]
    kappas = np.geomspace(0.05, 5.0, 60)
    grid = [(th, float(k)) for th in thetas for k in kappas]
    jobs = [(_gad_gen(0.0, k, th), 1.0, None) for th, k in grid]
    results = _parallel_map(_qubit_job, jobs, workers)
    rows = [[th, k, res.status, _tent(res)] for (th, k), res in zip(grid, results)]
    return ["theta", "kappa", "status", "T_ent"], rows


def _figure_3_surface(n_mean: float, workers: int) -> tuple[list[str], list[list]]:
    kappas = np.linspace(0.1, 3.0, 25)
    thetas = np.linspace(0.1, math.pi / 2, 13)
    cols, rows = _qubit_surface(
        lambda k, th: _gad_gen(n_mean, k, th), kappas, thetas, workers
    )
    return ["n_mean"] + cols, [[n_mean] + row for row in rows]


def figure_3b(workers: int = 1):
    return _figure_3_surface(0.5, workers)


def figure_3c(workers: int = 1):
    return _figure_3_surface(1.0, workers)


def figure_3d(workers: int = 1):
    return _figure_3_surface(2.0, workers)


def _gaussian_curves(thetas: list[float], workers: int) -> tuple[list[str], list[list]]:
    kappas = np.geomspace(0.05, 10.0, 60)
    grid = [(th, float(k)) for th in thetas for k in kappas]
    jobs = [(0.0, k, th, 1.0, None) for th, k in grid]
    results = _parallel_map(_gaussian_job, jobs, workers)
    rows = [[th, k, res.status, _tent(res)] for (th, k), res in zip(grid, results)]
    return ["theta", "kappa", "status", "T_ent"], rows


def figure_4a(workers: int = 1):
    """Gaussian damping, mixing angles below the squeezing-dominated regime."""
    return _gaussian_curves([0.0, math.pi / 8, math.pi / 5], workers)


def figure_4c(workers: int = 1):
    """Gaussian damping, squeezing-dominated mixing angles."""
    return _gaussian_curves([0.3 * math.pi, 0.4 * math.pi, 0.45 * math.pi], workers)


def _gaussian_surface(thetas, workers: int) -> tuple[list[str], list[list]]:
    kappas = np.linspace(0.1, 10.0, 25)
    grid = [(float(k), float(th)) for k in kappas for th in thetas]
    jobs = [(0.0, k, th, 1.0, None) for k, th in grid]
    results = _parallel_map(_gaussian_job, jobs, workers)
    rows = [[k, th, res.status, _tent(res)] for (k, th), res in zip(grid, results)]
    return ["kappa", "theta", "status", "T_ent"], rows


def figure_4b(workers: int = 1):
    return _gaussian_surface(np.linspace(0.0, 0.9 * math.pi / 4, 12), workers)


def figure_4d(workers: int = 1):
    return _gaussian_surface(np.linspace(1.1 * math.pi / 4, math.pi / 2, 12), workers)


def figure_5(workers: int = 1) -> tuple[list[str], list[list]]:
    """Large-driving survival-time limit against mixing angle."""
    thetas = np.linspace(0.0, 0.995 * math.pi / 4, 80)
    rows = []
    for n_mean in (0.0, 1.0):
        for th in thetas:
            rows.append([n_mean, float(th), est_large_kappa_limit(n_mean, float(th))])
    return ["n_mean", "theta", "T_ent_limit"], rows


FIGURES: dict[str, Callable[[int], tuple[list[str], list[list]]]] = {
    "1": figure_1,
    "2a": figure_2a,
    "2b": figure_2b,
    "3a": figure_3a,
    "3b": figure_3b,
    "3c": figure_3c,
    "3d": figure_3d,
    "4a": figure_4a,
    "4b": figure_4b,
    "4c": figure_4c,
    "4d": figure_4d,
    "5": figure_5,
}


def build_figure(fig_id: str, workers: int = 1) -> tuple[list[str], list[list]]:
    if fig_id not in FIGURES:
        raise ValueError(f"unknown figure id {fig_id!r}; known: {sorted(FIGURES)}")
    return FIGURES[fig_id](workers)


def render_figure(fig_id: str, columns: list[str], rows: list[list], path: str) -> None:
    """Render a panel's data table to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    data = {c: [r[i] for r in rows] for i, c in enumerate(columns)}

    def groups(key: str):
        seen = []
        for v in data[key]:
            if v not in seen:
                seen.append(v)
        return seen

    if fig_id == "1":
        for kappa in groups("kappa"):
            mask = [r[0] == kappa for r in rows]
            ax.plot(
                [t for t, m in zip(data["tau"], mask) if m],
                [n for n, m in zip(data["negativity"], mask) if m],
                label=f"kappa = {kappa:g}",
            )
        ax.set_xlabel("gamma t")
        ax.set_ylabel("negativity")
    elif fig_id in ("2a",):
        ax.plot(data["kappa"], [v if v is not None else np.nan for v in data["T_ent"]], "r-")
        ax.plot(data["kappa"], [v if v is not None else np.nan for v in data["lower_bound"]], "b--")
        ax.plot(data["kappa"], [v if v is not None else np.nan for v in data["upper_bound"]], "b--")
        ax.set_xlabel("kappa")
        ax.set_ylabel("rescaled survival time")
        ax.set_ylim(0, 6)
    elif fig_id in ("3a", "4a", "4c"):
        for th in groups("theta"):
            pts = [(k, v) for t, k, v in zip(data["theta"], data["kappa"], data["T_ent"]) if t == th]
            ax.plot([p[0] for p in pts], [p[1] if p[1] is not None else np.nan for p in pts],
                    label=f"theta = {th:.3f}")
        ax.set_xlabel("kappa")
        ax.set_ylabel("rescaled survival time")
    elif fig_id == "5":
        for n_mean in groups("n_mean"):
            pts = [(t, v) for n, t, v in zip(data["n_mean"], data["theta"], data["T_ent_limit"])
                   if n == n_mean]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"N = {n_mean:g}")
        ax.set_xlabel("theta")
        ax.set_ylabel("large-driving survival time")
    else:  # surfaces
        ks = sorted(set(data["kappa"]))
        ths = sorted(set(data["theta"]))
        z = np.full((len(ths), len(ks)), np.nan)
        for row in rows:
            d = dict(zip(columns, row))
            if d["T_ent"] is not None:
                z[ths.index(d["theta"]), ks.index(d["kappa"])] = d["T_ent"]
        mesh = ax.pcolormesh(ks, ths, z, shading="nearest")
        fig.colorbar(mesh, ax=ax, label="rescaled survival time")
        ax.set_xlabel("kappa")
        ax.set_ylabel("theta")
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=8)
    ax.set_title(f"figure {fig_id}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
