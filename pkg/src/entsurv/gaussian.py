"""One-mode Gaussian bosonic channels and their entanglement-breaking times.

A zero-mean one-mode Gaussian channel is the pair (F, G) of real 2x2 matrices
acting on Weyl operators as W_xi -> W_{F xi} * exp(-xi^T G xi / 2).  Complete
positivity requires G >= (i/2)(J - F^T J F) with J the symplectic metric, and
a necessary condition for entanglement breaking is G >= (i/2)(J + F^T J F).
Because A^T J A = det(A) J for any real 2x2 matrix A, both conditions reduce
to scalar inequalities in det F and det G, and the channel classes A, B1, B2,
C, D are decided by the sign of det F.

The concrete model treated here is thermal damping (mean environment
occupation N) driven by a quadratic Hamiltonian that mixes a rotation and a
squeezing term with angle theta.  Its first-moment drift gives F_t directly
and G_t follows from the second-moment integral (2N+1) gamma int_0^t F^T F ds,
evaluated through a block-matrix exponential so that no eigenvalue
degeneracies need special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .est import (
    DEFAULT_RESCALED_HORIZON,
    FINITE,
    HORIZON_EXCEEDED,
    EstResult,
    _first_zero,
)
from .qmat import TOL, matexp

J = np.array([[0.0, 1.0], [-1.0, 0.0]])

_CLASS_DEGENERACY_TOL = 1e-10
_CRITICAL_COS_TOL = 1e-6
LARGE_KAPPA_MIN = 5.0
SMALL_KAPPA_MAX = 0.05


@dataclass(frozen=True)
class GaussianChannel:
    """Heisenberg-picture pair (F, G); G is symmetric."""

    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        g = np.asarray(self.g, dtype=float)
        if f.shape != (2, 2) or g.shape != (2, 2):
            raise ValueError("F and G must be real 2x2 matrices")
        if np.abs(g - g.T).max() > 1e-12:
            raise ValueError("G must be symmetric")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", 0.5 * (g + g.T))

    def cpt_matrix(self) -> np.ndarray:
        """Hermitian matrix G - (i/2)(J - F^T J F); CPt iff it is PSD."""
        return self.g.astype(complex) - 0.5j * (J - self.f.T @ J @ self.f)

    def is_cpt(self, tol: float = 1e-10) -> bool:
        return float(np.linalg.eigvalsh(self.cpt_matrix())[0]) >= -tol


@dataclass(frozen=True)
class GaussianModelParams:
    """Driven thermal damping: environment occupation, driving ratio, mixing angle."""

    n_mean: float
    kappa: float = 0.0
    theta: float = 0.0
    gamma: float = 1.0

    def __post_init__(self):
        if self.n_mean < 0:
            raise ValueError("n_mean must be non-negative")
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError("theta must lie in [0, pi/2]")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    def rates(self) -> tuple[float, float]:
        return self.gamma * (self.n_mean + 1.0), self.gamma * self.n_mean


@dataclass(frozen=True)
class Classification:
    """Normal-form class with its canonical invariants (k, q)."""

    label: str  # one of A, B1, B2, C, D
    k: float
    q: float
    warning: str | None = None


def classify(ch: GaussianChannel) -> Classification:
    """Normal-form class from the determinant signature of F (F^T J F = det(F) J).

    q is recovered from the symplectic invariant sqrt(det G) and the class
    offset of the canonical form.  det F within 1e-10 of 1 is reported as a B
    class with a degeneracy warning.
    """
    if not ch.is_cpt():
        raise ValueError("channel is not completely positive")
    det_f = float(np.linalg.det(ch.f))
    det_g = float(np.linalg.det(ch.g))
    sqrt_g = math.sqrt(max(det_g, 0.0))
    if abs(det_f) < _CLASS_DEGENERACY_TOL:
        return Classification("A", 0.0, max(sqrt_g - 0.5, 0.0))
    if det_f < 0:
        k = math.sqrt(-det_f)
        return Classification("D", k, max(sqrt_g - (1.0 + k * k) / 2.0, 0.0))
    k = math.sqrt(det_f)
    if abs(det_f - 1.0) < _CLASS_DEGENERACY_TOL:
        warning = None
        if det_f != 1.0:
            warning = "det F within 1e-10 of 1; classified as B"
        if np.abs(ch.g).max() < 1e-14:
            return Classification("B2", 1.0, 0.0, warning)
        if det_g < _CLASS_DEGENERACY_TOL * float(np.abs(ch.g).max()) ** 2:
            return Classification("B1", 1.0, 0.0, warning)
        return Classification("B2", 1.0, sqrt_g, warning)
    return Classification("C", k, sqrt_g - abs(1.0 - k * k) / 2.0)


def eb_boundary_value(ch: GaussianChannel) -> float:
    """det(G - (i/2)(J + F^T J F)) = det G - (1 + det F)^2 / 4.

    Negative while the channel can still transmit entanglement; its first
    zero along a semigroup marks the survival time for B2/C-class channels.
    """
    det_f = float(np.linalg.det(ch.f))
    det_g = float(np.linalg.det(ch.g))
    return det_g - (1.0 + det_f) ** 2 / 4.0


def is_eb(ch: GaussianChannel) -> bool:
    """Entanglement-breaking verdict from the normal-form class."""
    c = classify(ch)
    if c.label == "A" or c.label == "D":
        return True
    if c.label == "B1":
        return False
    if c.label == "B2":
        return c.q >= 1.0 - 1e-14
    return c.q >= min(1.0, c.k * c.k) - 1e-14


def drift_matrix(p: GaussianModelParams) -> np.ndarray:
    """First-moment drift M with F_t = exp(t M).

    Thermal damping contracts both quadratures at gamma/2 independently of N;
    the driving adds kappa*gamma times a traceless rotation/squeeze mix whose
    square is -cos(2 theta) times the identity.
    """
    s, c = math.sin(p.theta), math.cos(p.theta)
    return p.gamma * np.array(
        [[-0.5 + p.kappa * s, -p.kappa * c], [p.kappa * c, -0.5 - p.kappa * s]]
    )


def model_fg(p: GaussianModelParams, t: float) -> GaussianChannel:
    """Channel (F_t, G_t) of the driven thermal damping semigroup.

    G_t = (2N+1) gamma int_0^t F_s^T F_s ds is evaluated exactly through the
    block exponential of [[K, 1], [0, 0]] with K the vectorized two-sided
    drift, which stays valid when K is singular or defective.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    m = drift_matrix(p)
    f = matexp(m, t)
    mt = m.T
    k = np.kron(mt, np.eye(2)) + np.kron(np.eye(2), mt)
    blk = np.zeros((8, 8))
    blk[:4, :4] = k
    blk[:4, 4:] = np.eye(4)
    integral = matexp(blk, t)[:4, 4:].real
    vec_g = (2.0 * p.n_mean + 1.0) * p.gamma * (integral @ np.eye(2).flatten(order="F"))
    g = vec_g.reshape(2, 2, order="F")
    return GaussianChannel(f.real, 0.5 * (g + g.T))


@dataclass(frozen=True)
class GaussianEstEquation:
    """Coefficients of cosh(tau) - a*cos(2 tau kappa sqrt(cos 2theta)) = b.

    For theta above pi/4 the cosine continues to a hyperbolic cosine; at the
    critical angle both a and b diverge while the equation itself limits to a
    quadratic-in-tau form, flagged by `critical`.  b_infinity = alpha/beta is
    the large-driving limit of b.
    """

    a_coef: float
    b_coef: float
    alpha: float
    beta: float
    b_infinity: float
    critical: bool = False


def est_equation_coefficients(p: GaussianModelParams) -> GaussianEstEquation:
    g1, g2 = p.rates()
    c = math.cos(2.0 * p.theta)
    alpha = (g1 * g1 + g2 * g2) * (2.0 + 3.0 * c) + 2.0 * g1 * g2 * (2.0 + c)
    beta = (g1 * g1 + g2 * g2) * (2.0 + c) + 2.0 * g1 * g2 * (2.0 + 3.0 * c)
    denom = (3.0 * g1 + g2) * (g1 + 3.0 * g2) + 4.0 * p.kappa**2 * beta
    if denom <= 0:
        raise ValueError("coefficient denominator must be positive")
    if abs(c) < _CRITICAL_COS_TOL:
        return GaussianEstEquation(math.inf, math.inf, alpha, beta, alpha / beta, True)
    sec = 1.0 / c
    a = 2.0 * (g1 + g2) ** 2 * (1.0 - sec) / denom
    b = (
        2.0 * (g1 + g2) ** 2 * sec
        + 3.0 * g1 * g1
        + 2.0 * g1 * g2
        + 3.0 * g2 * g2
        + 4.0 * p.kappa**2 * alpha
    ) / denom
    return GaussianEstEquation(a, b, alpha, beta, alpha / beta)


def est_equation_residual(p: GaussianModelParams) -> Callable[[float], float]:
    """Closed-coefficient residual of the survival-time equation in tau = gamma*t.

    Root-for-root equivalent to the determinant condition on (F_t, G_t); the
    overall sign differs between the oscillatory and hyperbolic branches, so
    callers should look for sign changes rather than upward crossings.
    """
    g1, g2 = p.rates()
    c = math.cos(2.0 * p.theta)
    eq = est_equation_coefficients(p)

    if eq.critical:

        def residual(tau: float) -> float:
            num = (
                (g1 - g2) ** 2
                + 4.0 * (g1 + g2) ** 2
                + 4.0 * p.kappa**2 * (g1 + g2) ** 2 * (2.0 + tau * tau)
            )
            den = (3.0 * g1 + g2) * (g1 + 3.0 * g2) + 8.0 * p.kappa**2 * (g1 + g2) ** 2
            return math.cosh(tau) - num / den

        return residual

    def residual(tau: float) -> float:
        x = 2.0 * tau * p.kappa
        osc = math.cos(x * math.sqrt(c)) if c > 0 else math.cosh(x * math.sqrt(-c))
        return math.cosh(tau) - eq.a_coef * osc - eq.b_coef

    return residual


def gaussian_est(
    p: GaussianModelParams,
    horizon: float | None = None,
    rtol: float = TOL.solver_rtol,
) -> EstResult:
    """First entanglement-breaking time of the driven thermal damping channel.

    Solved on the determinant condition det G = (1 + det F)^2 / 4 by the same
    bracket/bisect/Newton scheme as the qubit solver.  The model is
    entanglement breaking at finite time for every N >= 0, including pure
    loss, in contrast with its qubit counterpart.
    """
    if horizon is None:
        horizon = DEFAULT_RESCALED_HORIZON / p.gamma

    def g(t: float) -> float:
        # Amplified squeezing overflows far past the crossing; read it as broken.
        with np.errstate(over="ignore", invalid="ignore"):
            v = eb_boundary_value(model_fg(p, t))
        return v if np.isfinite(v) else math.inf

    root, evals, residual, _ = _first_zero(g, horizon, rtol)
    if root is None:
        return EstResult(HORIZON_EXCEEDED, iterations=evals)
    return EstResult(
        FINITE,
        t_ent=root,
        t_rescaled=p.gamma * root,
        iterations=evals,
        residual=residual,
    )


def est_large_kappa_limit(n_mean: float, theta: float) -> float:
    """Large-driving survival time arcosh(alpha/beta), finite for theta < pi/4."""
    if not 0.0 <= theta < math.pi / 4:
        raise ValueError("the asymptote is finite for theta in [0, pi/4)")
    p = GaussianModelParams(n_mean, 0.0, theta)
    eq = est_equation_coefficients(p)
    return math.acosh(eq.alpha / eq.beta)


def gaussian_series(p: GaussianModelParams, regime: str) -> float:
    """Perturbative survival time in the weak- or strong-driving regime.

    "small_kappa" (kappa <= 0.05): tau0 + tau2 kappa^2 with
    tau0 = ln((3g1+g2)/(g1+3g2)) and
    tau2 = (g1+g2)/(g1-g2) [tau0^2 - 4(g1-g2)^2/((3g1+g2)(g1+3g2))] (1-cos 2theta).
    "large_kappa_lowtheta" (kappa >= 5, theta < pi/4): asymptote
    arcosh(alpha/beta) plus the damped oscillation
    [a cos(2 kappa sqrt(cos 2theta) T_inf) + b - b_inf] / sqrt(b_inf^2 - 1).
    "large_kappa_hightheta" (kappa >= 5, theta > pi/4):
    arcosh(2 kappa^2 (beta-alpha) / ((g1+g2)^2 (1 - sec 2theta))) / (2 kappa sqrt(-cos 2theta)).
    """
    g1, g2 = p.rates()
    c = math.cos(2.0 * p.theta)
    if regime == "small_kappa":
        if not 0.0 <= p.kappa <= SMALL_KAPPA_MAX:
            raise ValueError(f"small_kappa regime requires kappa <= {SMALL_KAPPA_MAX}")
        tau0 = math.log((3.0 * g1 + g2) / (g1 + 3.0 * g2))
        tau2 = (
            (g1 + g2)
            / (g1 - g2)
            * (tau0 * tau0 - 4.0 * (g1 - g2) ** 2 / ((3.0 * g1 + g2) * (g1 + 3.0 * g2)))
            * (1.0 - c)
        )
        return tau0 + tau2 * p.kappa**2
    if abs(c) < _CRITICAL_COS_TOL:
        raise ValueError("theta = pi/4 is critical; neither large-driving branch applies")
    if regime == "large_kappa_lowtheta":
        if p.kappa < LARGE_KAPPA_MIN or c <= 0:
            raise ValueError("regime requires kappa >= 5 and theta < pi/4")
        eq = est_equation_coefficients(p)
        t_inf = math.acosh(eq.b_infinity)
        corr = (
            eq.a_coef * math.cos(2.0 * p.kappa * math.sqrt(c) * t_inf)
            + eq.b_coef
            - eq.b_infinity
        ) / math.sqrt(eq.b_infinity**2 - 1.0)
        return t_inf + corr
    if regime == "large_kappa_hightheta":
        if p.kappa < LARGE_KAPPA_MIN or c >= 0:
            raise ValueError("regime requires kappa >= 5 and theta > pi/4")
        eq = est_equation_coefficients(p)
        arg = (
            2.0
            * p.kappa**2
            * (eq.beta - eq.alpha)
            / ((g1 + g2) ** 2 * (1.0 - 1.0 / c))
        )
        if arg < 1.0:
            raise ValueError("driving too weak for the hyperbolic asymptote")
        return math.acosh(arg) / (2.0 * p.kappa * math.sqrt(-c))
    raise ValueError(f"unknown regime {regime!r}")
