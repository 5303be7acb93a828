"""Entanglement survival time of a dynamical semigroup.

The survival time is the first instant at which the semigroup exp(t*gen)
becomes entanglement breaking, located as the first zero of the smallest
eigenvalue of the partially transposed Choi state.  That eigenvalue starts at
-1/2, is smooth through the crossing, and stays non-negative afterwards for
time-homogeneous Markovian dynamics, so a coarse bracket plus bisection plus a
Newton polish pins the root to near machine precision.

Divergence is certified, not assumed: a run without a crossing is reported
divergent only when the sudden-death criterion is inconclusive (pure or
non-unique stationary state) and the tail of the eigenvalue trace decays
log-linearly towards zero from below.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .entanglement import choi, esd_criterion, min_pt_eigenvalue
from .qmat import TOL, Propagator, _require_square

FINITE = "finite"
DIVERGENT = "divergent"
HORIZON_EXCEEDED = "max-horizon-exceeded"

DEFAULT_RESCALED_HORIZON = 50.0
GRID_POINTS = 256
_NEWTON_STEP = 1e-6  # relative central-difference step for the polish


@dataclass(frozen=True)
class EstResult:
    """Survival time of one generator.

    t_ent is in units of 1/gamma and t_rescaled = gamma * t_ent is the
    dimensionless value; both are None unless status == "finite".  iterations
    counts root-function evaluations and residual is the remaining magnitude
    of the smallest PT eigenvalue at the returned root.  upper_bound_only is
    set for d > 2, where positivity of the partial transpose is necessary but
    not sufficient for separability.
    """

    status: str
    t_ent: float | None = None
    t_rescaled: float | None = None
    iterations: int = 0
    residual: float = math.nan
    upper_bound_only: bool = False

    @property
    def finite(self) -> bool:
        return self.status == FINITE


@dataclass(frozen=True)
class SweepPoint:
    """One sweep sample: the driving ratio, its result, or the failure message."""

    kappa: float
    result: EstResult | None
    error: str | None = None


def _first_zero(
    g: Callable[[float], float], horizon: float, rtol: float, newton: bool = True
) -> tuple[float | None, int, float, dict[float, float]]:
    """Hybrid bracketing/bisection/Newton search for the first upward zero of g.

    Returns (root, evaluations, residual, sampled values).  root is None when
    g stays negative on the whole grid.  Non-finite samples count as +inf;
    they can only occur far past the crossing.
    """
    evals = 0
    samples: dict[float, float] = {}

    def f(t: float) -> float:
        nonlocal evals
        evals += 1
        v = g(t)
        if not np.isfinite(v):
            v = math.inf
        samples[t] = v
        return v

    grid = np.geomspace(horizon * 1e-7, horizon, GRID_POINTS)
    lo = 0.0
    hi = None
    for t in grid:
        v = f(t)
        if v >= 0.0:
            hi = t
            break
        lo = t
    if hi is None:
        return None, evals, math.nan, samples

    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) >= 0.0:
            hi = mid
        else:
            lo = mid

    # Newton polish on the same root function; kept inside the bracket.
    root = 0.5 * (lo + hi)
    fr = f(root)
    for _ in range(8 if newton else 0):
        h = _NEWTON_STEP * root
        slope = (f(root + h) - f(root - h)) / (2.0 * h)
        if slope == 0.0 or not np.isfinite(slope):
            break
        step = fr / slope
        cand = root - step
        if not (lo - h <= cand <= hi + h):
            break
        root, fr = cand, f(cand)
        if abs(step) < 1e-13 * root:
            break
    return root, evals, abs(fr), samples


def _divergence_certified(
    g: Callable[[float], float], horizon: float, samples: dict[float, float]
) -> bool:
    """Log-linear tail test: min PT eigenvalue decays to zero from below."""
    ts = np.array(sorted(t for t in samples if t >= horizon / 10.0))
    if ts.size < 8:
        ts = np.linspace(horizon / 10.0, horizon, 12)
    vals = np.array([samples[t] if t in samples else g(t) for t in ts], dtype=float)
    if np.any(vals >= 0.0) or np.any(~np.isfinite(vals)):
        return False
    slope = np.polyfit(ts, np.log(-vals), 1)[0]
    return slope < 0.0


def solve_est(
    gen: np.ndarray,
    gamma: float,
    horizon: float | None = None,
    rtol: float = TOL.solver_rtol,
) -> EstResult:
    """Survival time of the semigroup generated by gen.

    gamma is the damping rate used for the dimensionless rescaling; horizon
    (default 50/gamma) bounds the search.  A purely unitary semigroup
    (gamma = 0) never becomes entanglement breaking and is reported divergent
    outright.
    """
    gen = _require_square(gen)
    d = math.isqrt(gen.shape[0])
    if d * d != gen.shape[0]:
        raise ValueError("generator dimension is not a perfect square")
    if gamma == 0:
        return EstResult(DIVERGENT, iterations=0, upper_bound_only=d > 2)
    if horizon is None:
        horizon = DEFAULT_RESCALED_HORIZON / gamma

    prop = Propagator(gen)

    def g(t: float) -> float:
        return min_pt_eigenvalue(choi(prop.at(t), d), d, d)

    root, evals, residual, samples = _first_zero(g, horizon, rtol)
    if root is not None:
        return EstResult(
            FINITE,
            t_ent=root,
            t_rescaled=gamma * root,
            iterations=evals,
            residual=residual,
            upper_bound_only=d > 2,
        )
    verdict = esd_criterion(gen)
    if not verdict.certified and _divergence_certified(g, horizon, samples):
        return EstResult(DIVERGENT, iterations=evals, upper_bound_only=d > 2)
    return EstResult(HORIZON_EXCEEDED, iterations=evals, upper_bound_only=d > 2)


def _solve_point(args: tuple[np.ndarray, float, float | None, float]) -> EstResult:
    gen, gamma, horizon, rtol = args
    return solve_est(gen, gamma, horizon, rtol)


def sweep(
    gen_for_kappa: Callable[[float], np.ndarray],
    kappas: Sequence[float],
    gamma: float,
    horizon: float | None = None,
    rtol: float = TOL.solver_rtol,
    workers: int = 1,
) -> list[SweepPoint]:
    """Survival time over an ascending grid of driving ratios.

    Generators are built serially; solves run on a process pool when
    workers > 1.  Results are assembled in input order, so parallel and
    serial sweeps are identical.  A failing point is recorded with its error
    message instead of aborting the sweep.
    """
    kappas = list(kappas)
    points: list[SweepPoint] = []
    jobs: list[tuple[int, tuple[np.ndarray, float, float | None, float]]] = []
    for idx, kappa in enumerate(kappas):
        try:
            gen = gen_for_kappa(kappa)
        except Exception as exc:  # noqa: BLE001 - per-point error capture is the contract
            points.append(SweepPoint(kappa, None, str(exc)))
            continue
        points.append(SweepPoint(kappa, None, None))
        jobs.append((idx, (gen, gamma, horizon, rtol)))

    def finish(idx: int, outcome: EstResult | None, error: str | None) -> None:
        points[idx] = SweepPoint(kappas[idx], outcome, error)

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (idx, _), res in zip(jobs, pool.map(_solve_point, [j for _, j in jobs])):
                finish(idx, res, None)
    else:
        for idx, job in jobs:
            try:
                finish(idx, _solve_point(job), None)
            except Exception as exc:  # noqa: BLE001
                finish(idx, None, str(exc))
    return points
