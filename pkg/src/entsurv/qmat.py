"""Dense complex linear-algebra kernel for small operator and superoperator matrices.

Everything in this package runs through plain complex ndarrays of modest size
(2x2 and 4x4 operators, 4x4 and 16x16 superoperators), so the routines here
favour robustness and determinism over asymptotic cleverness.  Matrix
exponentials are taken through an eigendecomposition whenever the eigenvector
matrix is well conditioned, with a scaling-and-squaring Pade fallback for the
nearly defective generators that show up close to critical driving strengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared between the library and its test suite."""

    hermiticity: float = 1e-10        # herm_eigvals input gate
    hermitian_field: float = 1e-12    # Hermiticity of stored operators (H, flagged matrices)
    kernel: float = 1e-9              # relative singular-value cutoff for kernel extraction
    fixed_point_psd: float = 1e-9     # admissible negative part of a stationary state
    trace_preserving: float = 1e-10   # trace functional annihilating a generator
    choi_psd: float = 1e-8            # admissible negative Choi eigenvalue (CPt gate)
    unitarity: float = 1e-12          # ||u^dag u - 1|| for conjugations
    gauge_equality: float = 1e-12     # generator equality after gauge fixing
    eig_condition: float = 1e8        # eigenvector conditioning above which matexp falls back
    solver_rtol: float = 1e-10        # relative bracket width for survival-time bisection


TOL = Tolerances()


class DegenerateKernelError(ValueError):
    """Raised when a generator has more than one stationary state."""


def _require_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def det(m: np.ndarray) -> complex:
    """LU-based determinant of a square complex matrix."""
    return complex(np.linalg.det(_require_square(m)))


def herm_eigvals(m: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted ascending.

    Raises ValueError if the input deviates from Hermiticity by more than
    TOL.hermiticity in any entry.
    """
    m = _require_square(m)
    defect = np.abs(m - m.conj().T).max()
    if defect > TOL.hermiticity:
        raise ValueError(f"matrix is not Hermitian (max deviation {defect:.3e})")
    return np.linalg.eigvalsh(m)


class Propagator:
    """Cached map t -> exp(t*gen) for a fixed square generator.

    The generator is diagonalized once; each evaluation is then a pair of
    small matrix products.  If the eigenvector matrix is ill conditioned
    (condition number above TOL.eig_condition) every call falls back to
    scaling-and-squaring instead.
    """

    def __init__(self, gen: np.ndarray):
        self.gen = _require_square(gen)
        self._eig = None
        try:
            w, v = np.linalg.eig(self.gen)
            cond = np.linalg.cond(v)
            if np.isfinite(cond) and cond < TOL.eig_condition:
                self._eig = (w, v, np.linalg.inv(v))
        except np.linalg.LinAlgError:
            pass

    def at(self, t: float) -> np.ndarray:
        if self._eig is None:
            return scipy.linalg.expm(t * self.gen)
        w, v, vinv = self._eig
        return (v * np.exp(t * w)) @ vinv


def matexp(m: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(t*m) for a square complex matrix."""
    return Propagator(m).at(t)


def null_fixed_point(gen: np.ndarray) -> np.ndarray:
    """Stationary density matrix of a superoperator with a one-dimensional kernel.

    The kernel is extracted by SVD with a relative singular-value cutoff of
    TOL.kernel.  The null vector is reshaped (column stacking) to a d x d
    matrix, Hermitized and normalized to unit trace.

    Raises DegenerateKernelError when the kernel has dimension above one and
    ValueError when there is no kernel or the candidate state is not positive
    semidefinite within TOL.fixed_point_psd.
    """
    gen = _require_square(gen)
    n = gen.shape[0]
    d = math.isqrt(n)
    if d * d != n:
        raise ValueError(f"superoperator dimension {n} is not a perfect square")
    _, s, vh = np.linalg.svd(gen)
    cutoff = TOL.kernel * max(s[0], 1.0)
    null_dim = int(np.sum(s < cutoff))
    if null_dim == 0:
        raise ValueError("generator has no stationary state (no zero singular value)")
    if null_dim > 1:
        raise DegenerateKernelError(
            f"generator has a {null_dim}-dimensional kernel (multiple stationary states)"
        )
    rho = vh[-1].conj().reshape(d, d, order="F")
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise ValueError("kernel vector is traceless, not a state")
    rho = rho / tr
    eigs = np.linalg.eigvalsh(rho)
    if eigs[0] < -TOL.fixed_point_psd:
        raise ValueError(f"stationary candidate is not positive (min eigenvalue {eigs[0]:.3e})")
    residual = np.linalg.norm(gen @ rho.flatten(order="F"))
    if residual > TOL.kernel * max(np.linalg.norm(gen), 1.0):
        raise ValueError(f"kernel residual {residual:.3e} too large")
    return rho
