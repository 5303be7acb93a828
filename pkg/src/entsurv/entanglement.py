"""Choi states, partial transposition, negativity and the sudden-death criterion.

The Choi state of a channel Phi acting on a d-level system is
(Phi x id)|Omega><Omega| with |Omega> the maximally entangled state built on
the computational basis.  Bipartite indices follow the same fast-first
ordering as the superoperator vec convention: the component |a>_A |b>_B of a
two-qubit state sits at position a + 2b, i.e. basis order
(|00>, |10>, |01>, |11>), which makes every matrix here directly comparable
with the 4x4 superoperator displays.  The ancilla B is therefore the slow
Kronecker factor, and the partial transpose acts on it.  For qubits the
positivity of the partial transpose decides separability exactly; in higher
dimension it only certifies an upper bound on the survival time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmat
from .lindblad import unvec, vec
from .qmat import TOL, DegenerateKernelError


def choi(channel: np.ndarray, d: int = 2) -> np.ndarray:
    """Choi state (1/d) sum_ij Phi(Eij) x Eij of a channel matrix.

    The channel acts on column-stacked density matrices.  A negative Choi
    eigenvalue below -TOL.choi_psd flags a non completely positive input and
    raises ValueError.
    """
    channel = np.asarray(channel, dtype=complex)
    if channel.shape != (d * d, d * d):
        raise ValueError(f"channel matrix must be {d * d}x{d * d}")
    rho = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            eij = np.zeros((d, d), dtype=complex)
            eij[i, j] = 1.0
            rho += np.kron(eij, unvec(channel @ vec(eij), d))
    rho /= d
    rho = 0.5 * (rho + rho.conj().T)
    eigs = np.linalg.eigvalsh(rho)
    if eigs[0] < -TOL.choi_psd:
        raise ValueError(f"channel is not completely positive (Choi eigenvalue {eigs[0]:.3e})")
    return rho


def maximally_entangled_state(d: int = 2) -> np.ndarray:
    """|Omega><Omega| on the computational basis; the t = 0 Choi state."""
    ket = np.zeros(d * d, dtype=complex)
    for k in range(d):
        ket[k * d + k] = 1.0
    ket /= math.sqrt(d)
    return np.outer(ket, ket.conj())


def partial_transpose(rho: np.ndarray, d_a: int = 2, d_b: int = 2) -> np.ndarray:
    """Transpose on the ancilla factor (the slow index) of a bipartite state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d_a * d_b, d_a * d_b):
        raise ValueError("state dimension does not match the tensor factors")
    r = rho.reshape(d_b, d_a, d_b, d_a)
    return r.transpose(2, 1, 0, 3).reshape(d_a * d_b, d_a * d_b)


def pt_spectrum(rho: np.ndarray, d_a: int = 2, d_b: int = 2) -> np.ndarray:
    """Eigenvalues of the partial transpose, ascending."""
    return qmat.herm_eigvals(partial_transpose(rho, d_a, d_b))


def min_pt_eigenvalue(rho: np.ndarray, d_a: int = 2, d_b: int = 2) -> float:
    """Smallest eigenvalue of the partial transpose.

    Negative exactly while the state carries distillable (NPT) entanglement,
    and smooth through the zero crossing, which makes it the natural root
    function for survival-time solvers.
    """
    return float(pt_spectrum(rho, d_a, d_b)[0])


def negativity(rho: np.ndarray, d_a: int = 2, d_b: int = 2) -> float:
    """Entanglement negativity sum_l (|l| - l)/2 over the PT spectrum."""
    lam = pt_spectrum(rho, d_a, d_b)
    return float(0.5 * np.sum(np.abs(lam) - lam))


@dataclass(frozen=True)
class EsdVerdict:
    """Outcome of the sudden-death criterion for a generator.

    certified is True when the unique stationary state is mixed, which forces
    the survival time to be finite.  A pure or non-unique stationary state
    leaves the verdict inconclusive (the survival time may diverge).
    """

    certified: bool
    reason: str
    fixed_point: np.ndarray | None = None
    fixed_point_det: float | None = None

    @property
    def status(self) -> str:
        return "finite-est-certified" if self.certified else "inconclusive"


def esd_criterion(gen: np.ndarray) -> EsdVerdict:
    """Certify a finite survival time from the mixedness of the stationary state."""
    try:
        rho_bar = qmat.null_fixed_point(gen)
    except DegenerateKernelError:
        return EsdVerdict(False, "multiple stationary states")
    except ValueError as exc:
        return EsdVerdict(False, f"no usable stationary state ({exc})")
    d = np.real(qmat.det(rho_bar))
    if d > TOL.fixed_point_psd:
        return EsdVerdict(True, "stationary state is mixed", rho_bar, d)
    return EsdVerdict(False, "stationary state is pure", rho_bar, d)
