"""Assembly and transformation of GKSL generators as superoperator matrices.

Convention: density matrices are vectorized by column stacking, which orders a
qubit state as (rho_00, rho_10, rho_01, rho_11), i.e. the elementary-matrix
basis {E00, E10, E01, E11} with Eij = |i><j|.  With this vec, rho -> A rho B
becomes kron(B.T, A).  A generator

    L[rho] = gamma * sum_j (Lj rho Lj^dag - {Lj^dag Lj, rho}/2) - i*omega*[H, rho]

is therefore represented by the d^2 x d^2 matrix

    gamma * sum_j (kron(conj(Lj), Lj) - (kron(1, Lj^dag Lj) + kron((Lj^dag Lj).T, 1))/2)
    - i*omega*(kron(1, H) - kron(H.T, 1)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qmat import TOL, _require_square


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(m, dtype=complex).flatten(order="F")


def unvec(v: np.ndarray, d: int | None = None) -> np.ndarray:
    """Inverse of vec."""
    v = np.asarray(v, dtype=complex)
    if d is None:
        d = int(round(np.sqrt(v.size)))
    return v.reshape(d, d, order="F")


def trace_functional(d: int) -> np.ndarray:
    """Row vector w such that w @ vec(rho) = Tr(rho)."""
    w = np.zeros(d * d, dtype=complex)
    w[:: d + 1] = 1.0
    return w


@dataclass(frozen=True)
class LindbladSpec:
    """Hamiltonian, jump operators and the two rate constants of a GKSL generator.

    gamma scales the dissipator, omega the Hamiltonian commutator; both carry
    frequency units, so kappa = omega/gamma is the dimensionless driving ratio.
    """

    hamiltonian: np.ndarray
    lindblad_ops: tuple[np.ndarray, ...]
    gamma: float
    omega: float = 0.0

    def __post_init__(self):
        h = _require_square(self.hamiltonian)
        object.__setattr__(self, "hamiltonian", h)
        ops = tuple(np.asarray(op, dtype=complex) for op in self.lindblad_ops)
        object.__setattr__(self, "lindblad_ops", ops)
        if np.abs(h - h.conj().T).max() > TOL.hermitian_field:
            raise ValueError("hamiltonian is not Hermitian")
        d = h.shape[0]
        for op in ops:
            if op.shape != (d, d):
                raise ValueError("all operators must share the Hamiltonian dimension")
        if self.gamma < 0 or self.omega < 0:
            raise ValueError("gamma and omega must be non-negative")

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]

    @property
    def kappa(self) -> float:
        """Driving/damping ratio omega/gamma; undefined for gamma = 0."""
        if self.gamma == 0:
            raise ValueError("kappa is undefined for gamma = 0")
        return self.omega / self.gamma


def build_generator(spec: LindbladSpec) -> np.ndarray:
    """Superoperator matrix of the generator in the elementary basis."""
    d = spec.dim
    eye = np.eye(d, dtype=complex)
    gen = np.zeros((d * d, d * d), dtype=complex)
    for L in spec.lindblad_ops:
        ldl = L.conj().T @ L
        gen += np.kron(L.conj(), L) - 0.5 * (np.kron(eye, ldl) + np.kron(ldl.T, eye))
    gen *= spec.gamma
    h = spec.hamiltonian
    gen += -1j * spec.omega * (np.kron(eye, h) - np.kron(h.T, eye))
    return gen


def gauge_fix(spec: LindbladSpec) -> LindbladSpec:
    """Equivalent spec with traceless jump operators.

    Each Lj is shifted by cj = -Tr(Lj)/d and the Hamiltonian absorbs the
    compensating term sum_j (conj(cj) Lj - cj Lj^dag)/(2i kappa), so that
    build_generator of input and output agree.  When omega = 0 the shift can
    only be absorbed if the compensating term vanishes (it does for Hermitian
    or already traceless jump operators); otherwise a ValueError is raised.
    """
    d = spec.dim
    shifts = [-np.trace(L) / d for L in spec.lindblad_ops]
    new_ops = tuple(
        L + c * np.eye(d, dtype=complex) for L, c in zip(spec.lindblad_ops, shifts)
    )
    correction = np.zeros((d, d), dtype=complex)
    for L, c in zip(spec.lindblad_ops, shifts):
        correction += np.conj(c) * L - c * L.conj().T
    if np.abs(correction).max() < 1e-15:
        return LindbladSpec(spec.hamiltonian, new_ops, spec.gamma, spec.omega)
    if spec.omega == 0:
        raise ValueError(
            "cannot absorb the trace shift into the Hamiltonian when omega = 0"
        )
    h = spec.hamiltonian + correction / (2j * spec.kappa)
    h = 0.5 * (h + h.conj().T)
    return LindbladSpec(h, new_ops, spec.gamma, spec.omega)


def conjugate(gen: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Unitary conjugation U^-1 o gen o U of a superoperator, U[rho] = u rho u^dag."""
    gen = _require_square(gen)
    u = _require_square(u)
    if np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() > TOL.unitarity:
        raise ValueError("conjugation matrix is not unitary")
    big_u = np.kron(u.conj(), u)
    big_u_inv = np.kron(u.T, u.conj().T)
    return big_u_inv @ gen @ big_u


def scale(gen: np.ndarray, q: float) -> np.ndarray:
    """q * gen for q > 0 (uniform speed-up of the semigroup)."""
    if q <= 0:
        raise ValueError("scale factor must be positive")
    return q * _require_square(gen)
