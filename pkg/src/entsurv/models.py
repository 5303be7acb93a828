"""Closed forms for the three qubit noise models.

Phase flip with a tilted driving field, generalized amplitude damping against
a thermal environment, and depolarizing noise.  For each model this module
provides the generator spec, and where a closed form exists, the partial
transpose spectrum, the negativity, the transcendental survival-time
equation, bounds and perturbative approximations.  These serve as analytic
oracles for the numeric Choi/PT pipeline (and vice versa).

All time arguments are dimensionless, tau = gamma * t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lindblad import LindbladSpec

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|, decay to ground
SIGMA_PLUS = SIGMA_MINUS.conj().T

ARCOSH3 = math.acosh(3.0)

# Validity windows for the perturbative regimes of the phase-flip model.
SMALL_KAPPA_MAX = 0.05
CRITICAL_HALF_WIDTH = 0.05
LARGE_KAPPA_MIN = 5.0


def _driving_hamiltonian(theta: float) -> np.ndarray:
    """n . sigma for the unit vector n = (sin theta, 0, cos theta)."""
    return math.sin(theta) * PAULI_X + math.cos(theta) * PAULI_Z


@dataclass(frozen=True)
class PhaseFlipParams:
    """Phase-flip noise with driving tilted by theta from the dephasing axis.

    The azimuthal angle of the driving direction is gauged away by a rotation
    about z, so it is stored normalized to zero.
    """

    kappa: float
    theta: float = math.pi / 2
    phi: float = 0.0

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError("theta must lie in [0, pi/2]")
        object.__setattr__(self, "phi", 0.0)

    @property
    def axis(self) -> np.ndarray:
        return np.array([math.sin(self.theta), 0.0, math.cos(self.theta)])


@dataclass(frozen=True)
class GadParams:
    """Generalized amplitude damping with mean thermal occupation n_mean."""

    n_mean: float
    kappa: float = 0.0
    theta: float = math.pi / 2

    def __post_init__(self):
        if self.n_mean < 0:
            raise ValueError("n_mean must be non-negative")
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError("theta must lie in [0, pi/2]")

    def rates(self, gamma: float = 1.0) -> tuple[float, float]:
        """Downward and upward rates (gamma1, gamma2) = gamma*(N+1), gamma*N."""
        return gamma * (self.n_mean + 1.0), gamma * self.n_mean


def phase_flip_spec(p: PhaseFlipParams, gamma: float = 1.0) -> LindbladSpec:
    return LindbladSpec(
        _driving_hamiltonian(p.theta),
        (PAULI_Z / math.sqrt(2.0),),
        gamma,
        p.kappa * gamma,
    )


def gad_spec(p: GadParams, gamma: float = 1.0) -> LindbladSpec:
    ops = (
        math.sqrt(p.n_mean + 1.0) * SIGMA_MINUS,
        math.sqrt(p.n_mean) * SIGMA_PLUS,
    )
    return LindbladSpec(_driving_hamiltonian(p.theta), ops, gamma, p.kappa * gamma)


def depolarizing_spec(
    kappa: float = 0.0, theta: float = math.pi / 2, gamma: float = 1.0
) -> LindbladSpec:
    ops = (PAULI_X / 2.0, PAULI_Y / 2.0, PAULI_Z / 2.0)
    return LindbladSpec(_driving_hamiltonian(theta), ops, gamma, kappa * gamma)


# ---------------------------------------------------------------------------
# Phase flip, theta = pi/2 (driving along x): closed forms
# ---------------------------------------------------------------------------

# The PT spectrum involves cosh(tau*sqrt(u))-type factors with u = 1-16k^2.
# For u < 0 they continue to cos/sin of the real argument; near u = 0 the
# removable singularity is handled by a short Taylor series in u.
_U_SERIES_CUTOFF = 1e-5


def _q_squared(tau: float, kappa: float) -> float:
    u = 1.0 - 16.0 * kappa * kappa
    if abs(u) < _U_SERIES_CUTOFF:
        t2 = tau * tau
        return (
            1.0
            + t2
            + u * t2 * t2 / 3.0
            + u * u * 2.0 * t2**3 / 45.0
            + u**3 * t2**4 / 315.0
            + u**4 * 2.0 * t2**5 / 14175.0
        )
    if u > 0:
        ch = math.cosh(tau * math.sqrt(u))
    else:
        ch = math.cos(tau * math.sqrt(-u))
    return (ch * ch - 16.0 * kappa * kappa) / u


def pf_q(tau: float, kappa: float) -> float:
    """Q(tau) = sqrt((cosh^2(tau*sqrt(1-16k^2)) - 16k^2)/(1-16k^2)), real for all kappa."""
    return math.sqrt(max(_q_squared(tau, kappa), 0.0))


def pf_s(tau: float, kappa: float) -> float:
    """S(tau) = sinh(tau*sqrt(1-16k^2))/sqrt(1-16k^2), real for all kappa."""
    u = 1.0 - 16.0 * kappa * kappa
    if abs(u) < _U_SERIES_CUTOFF:
        t2 = tau * tau
        return tau * (1.0 + u * t2 / 6.0 + u * u * t2 * t2 / 120.0 + u**3 * t2**3 / 5040.0)
    if u > 0:
        return math.sinh(tau * math.sqrt(u)) / math.sqrt(u)
    return math.sin(tau * math.sqrt(-u)) / math.sqrt(-u)


def _require_x_driving(p: PhaseFlipParams) -> None:
    if abs(p.theta - math.pi / 2) > 1e-12:
        raise ValueError("closed forms hold for theta = pi/2 only")


def pf_spectrum(p: PhaseFlipParams, tau: float) -> np.ndarray:
    """PT Choi eigenvalues for x-axis driving, ascending."""
    _require_x_driving(p)
    h = tau / 2.0
    e = math.exp(-h) / 2.0
    q, s = pf_q(h, p.kappa), pf_s(h, p.kappa)
    lam = [
        e * (math.sinh(h) - q),
        e * (math.sinh(h) + q),
        e * (math.cosh(h) - s),
        e * (math.cosh(h) + s),
    ]
    return np.sort(np.array(lam))


def pf_negativity(p: PhaseFlipParams, tau: float) -> float:
    """Negativity exp(-tau/2)/2 * max(Q(tau/2) - sinh(tau/2), 0).

    Without driving this simplifies to exp(-tau)/2 exactly, which is used
    directly to avoid the catastrophic cancellation of cosh - sinh at large
    tau.
    """
    _require_x_driving(p)
    if p.kappa == 0.0:
        return math.exp(-tau) / 2.0
    h = tau / 2.0
    gap = pf_q(h, p.kappa) - math.sinh(h)
    if gap <= 0.0:
        return 0.0
    return math.exp(-h) / 2.0 * gap


def pf_est_equation(p: PhaseFlipParams):
    """Residual whose smallest positive zero is the rescaled survival time.

    In dimensionless form the crossing condition Q(tau/2) = sinh(tau/2) is
    equivalent to cosh(tau) = 2 + (cosh(tau*sqrt(1-16k^2)) - 16k^2)/(1-16k^2).
    """
    _require_x_driving(p)
    kappa = p.kappa

    def residual(tau: float) -> float:
        u = 1.0 - 16.0 * kappa * kappa
        if abs(u) < _U_SERIES_CUTOFF:
            t2 = tau * tau
            rhs = 1.0 + t2 / 2.0 + u * t2 * t2 / 24.0 + u * u * t2**3 / 720.0
        else:
            ch = math.cosh(tau * math.sqrt(u)) if u > 0 else math.cos(tau * math.sqrt(-u))
            rhs = (ch - 16.0 * kappa * kappa) / u
        return math.cosh(tau) - 2.0 - rhs

    return residual


def pf_bounds(kappa: float) -> tuple[float, float]:
    """Survival-time bounds arcosh(3) <= T(kappa) <= arcosh(2 + (1+16k^2)/(16k^2-1)).

    Valid in the high-driving regime kappa >= 1/4; the upper bound diverges
    at the critical ratio itself.
    """
    if kappa < 0.25:
        raise ValueError("bounds hold for kappa >= 1/4")
    denom = 16.0 * kappa * kappa - 1.0
    if denom <= 0.0:
        return ARCOSH3, math.inf
    return ARCOSH3, math.acosh(2.0 + (1.0 + 16.0 * kappa * kappa) / denom)


def lambert_w(x: float) -> float:
    """Principal branch of w*exp(w) = x for x >= 0, by Halley iteration."""
    if x < 0:
        raise ValueError("only x >= 0 is supported")
    if x == 0.0:
        return 0.0
    if x > math.e:
        lx = math.log(x)
        llx = math.log(lx)
        w = lx - llx + llx / lx
    else:
        w = math.log1p(x)
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        step = f / denom
        w -= step
        if abs(step) < 1e-15 * (1.0 + abs(w)):
            break
    return w


def _critical_tau0() -> float:
    # Root of cosh(tau) = 3 + tau^2/2, the exact critical-ratio survival time.
    tau = 2.5
    for _ in range(60):
        f = math.cosh(tau) - 3.0 - tau * tau / 2.0
        df = math.sinh(tau) - tau
        step = f / df
        tau -= step
        if abs(step) < 1e-15:
            break
    return tau


CRITICAL_TAU0 = _critical_tau0()


def pf_series(kappa: float, regime: str) -> float:
    """Perturbative survival time in one of three driving regimes.

    "small" (kappa <= 0.05): leading Lambert-W term W(1/(2 kappa^2)) plus its
    first correction.  "critical" (|kappa - 1/4| <= 0.05): quadratic expansion
    around the critical ratio.  "large" (kappa >= 5): asymptote arcosh(3)
    plus the oscillatory 1/kappa^2 correction.
    """
    if regime == "small":
        if not 0.0 < kappa <= SMALL_KAPPA_MAX:
            raise ValueError(f"small regime requires 0 < kappa <= {SMALL_KAPPA_MAX}")
        w = lambert_w(1.0 / (2.0 * kappa * kappa))
        k2 = kappa * kappa
        u = 1.0 - 16.0 * k2
        su = math.sqrt(u)
        x = 2.0 * k2 * w  # equals exp(-w)
        first = ((1.0 - x) ** 2 - 2.0 * x) / (2.0 * (1.0 + w))
        second = (1.0 + x**u) / (2.0 * su * x ** (su - 1.0))
        return w + first + second
    if regime == "critical":
        if abs(kappa - 0.25) > CRITICAL_HALF_WIDTH:
            raise ValueError(
                f"critical regime requires |kappa - 1/4| <= {CRITICAL_HALF_WIDTH}"
            )
        t0 = CRITICAL_TAU0
        sh, ch = math.sinh(t0), math.cosh(t0)
        t1 = -(t0**4) / (3.0 * (sh - t0))
        t2 = (
            -2.0 * t0**4 / 3.0
            - 4.0 * t0**3 * t1 / 3.0
            + 4.0 * t0**6 / 45.0
            - 0.5 * (ch - 1.0) * t1 * t1
        ) / (sh - t0)
        x = kappa - 0.25
        return t0 + t1 * x + t2 * x * x
    if regime == "large":
        if kappa < LARGE_KAPPA_MIN:
            raise ValueError(f"large regime requires kappa >= {LARGE_KAPPA_MIN}")
        denom = 16.0 * kappa * kappa - 1.0
        corr = (1.0 - math.cos(ARCOSH3 * math.sqrt(denom))) / (2.0 * math.sqrt(2.0) * denom)
        return ARCOSH3 + corr
    raise ValueError(f"unknown regime {regime!r}")


def pf_critical_coefficients() -> tuple[float, float, float]:
    """(tau0, tau1, tau2) of the expansion around the critical driving ratio."""
    t0 = CRITICAL_TAU0
    sh, ch = math.sinh(t0), math.cosh(t0)
    t1 = -(t0**4) / (3.0 * (sh - t0))
    t2 = (
        -2.0 * t0**4 / 3.0
        - 4.0 * t0**3 * t1 / 3.0
        + 4.0 * t0**6 / 45.0
        - 0.5 * (ch - 1.0) * t1 * t1
    ) / (sh - t0)
    return t0, t1, t2


# ---------------------------------------------------------------------------
# Generalized amplitude damping, kappa = 0: closed forms
# ---------------------------------------------------------------------------


def gad_a(tau: float, n_mean: float) -> float:
    """A(tau) = sqrt(1/2 + (4N(N+1) + cosh((2N+1)tau))/(2(2N+1)^2))."""
    m = 2.0 * n_mean + 1.0
    return math.sqrt(0.5 + (4.0 * n_mean * (n_mean + 1.0) + math.cosh(m * tau)) / (2.0 * m * m))


def gad_spectrum(p: GadParams, tau: float) -> np.ndarray:
    """PT Choi eigenvalues of the undriven thermal damping semigroup, ascending."""
    if p.kappa != 0.0:
        raise ValueError("closed forms hold for kappa = 0 only")
    n = p.n_mean
    m = 2.0 * n + 1.0
    decay = math.exp(-m * tau)
    e = math.exp(-m * tau / 2.0) / 2.0
    a = gad_a(tau, n)
    lam = [
        (n * decay + n + 1.0) / (4.0 * n + 2.0),
        ((n + 1.0) * decay + n) / (4.0 * n + 2.0),
        e * (math.sinh(m * tau / 2.0) - a),
        e * (math.sinh(m * tau / 2.0) + a),
    ]
    return np.sort(np.array(lam))


def gad_negativity(p: GadParams, tau: float) -> float:
    """Negativity exp(-(2N+1)tau/2)/2 * max(A(tau) - sinh((2N+1)tau/2), 0).

    The lossy limit N = 0 reduces to exp(-tau)/2 exactly and is evaluated
    that way (same cancellation concern as the undriven phase flip).
    """
    if p.kappa != 0.0:
        raise ValueError("closed forms hold for kappa = 0 only")
    if p.n_mean == 0.0:
        return math.exp(-tau) / 2.0
    m = 2.0 * p.n_mean + 1.0
    gap = gad_a(tau, p.n_mean) - math.sinh(m * tau / 2.0)
    if gap <= 0.0:
        return 0.0
    return math.exp(-m * tau / 2.0) / 2.0 * gap


def gad_est_dissipative(n_mean: float) -> float:
    """Rescaled survival time (2N+1)^-1 arcosh(1 + (2N+1)^2/(2N(N+1))) for N > 0.

    Pure loss (N = 0) never becomes entanglement breaking; returns inf.
    """
    if n_mean < 0:
        raise ValueError("n_mean must be non-negative")
    if n_mean == 0.0:
        return math.inf
    m = 2.0 * n_mean + 1.0
    return math.acosh(1.0 + m * m / (2.0 * n_mean * (n_mean + 1.0))) / m


# ---------------------------------------------------------------------------
# Depolarizing
# ---------------------------------------------------------------------------


def depolarizing_negativity(tau: float) -> float:
    """Negativity exp(-tau/2)/2 * max(exp(-tau/2) - sinh(tau/2), 0) = max(3e^-tau - 1, 0)/4."""
    return max(3.0 * math.exp(-tau) - 1.0, 0.0) / 4.0


def depolarizing_est() -> float:
    """Rescaled survival time ln 3, independent of the driving ratio."""
    return math.log(3.0)
