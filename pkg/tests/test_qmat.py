import numpy as np
import pytest

from entsurv import (
    DegenerateKernelError,
    GadParams,
    PhaseFlipParams,
    build_generator,
    depolarizing_spec,
    det,
    gad_spec,
    gad_spectrum,
    herm_eigvals,
    matexp,
    maximally_entangled_state,
    null_fixed_point,
    partial_transpose,
    pf_spectrum,
    phase_flip_spec,
)
from entsurv.entanglement import choi
from entsurv.lindblad import vec


def bell_pt():
    return partial_transpose(maximally_entangled_state())


def test_matexp_zero_matrix_is_identity():
    assert np.abs(matexp(np.zeros((4, 4)), 2.7) - np.eye(4)).max() < 1e-14


def test_matexp_dephasing_generator():
    gen = np.diag([0.0, -1.0, -1.0, 0.0]).astype(complex)
    for t in (0.3, 1.0, 4.2):
        expected = np.diag([1.0, np.exp(-t), np.exp(-t), 1.0])
        assert np.abs(matexp(gen, t) - expected).max() < 1e-12


def test_matexp_depolarizing_generator():
    gen = build_generator(depolarizing_spec(kappa=0.0))
    t = 0.8
    e = np.exp(-t)
    expected = 0.5 * np.array(
        [
            [1 + e, 0, 0, 1 - e],
            [0, 2 * e, 0, 0],
            [0, 0, 2 * e, 0],
            [1 - e, 0, 0, 1 + e],
        ]
    )
    assert np.abs(matexp(gen, t) - expected).max() < 1e-12


def test_matexp_rejects_non_square():
    with pytest.raises(ValueError):
        matexp(np.zeros((2, 3)), 1.0)


def test_herm_eigvals_identity():
    assert np.abs(herm_eigvals(np.eye(4)) - 1.0).max() < 1e-14


def test_herm_eigvals_bell_partial_transpose():
    lam = herm_eigvals(bell_pt())
    assert np.abs(lam - np.array([-0.5, 0.5, 0.5, 0.5])).max() < 1e-12


def test_herm_eigvals_dephased_choi():
    gen = build_generator(phase_flip_spec(PhaseFlipParams(0.0)))
    lam = herm_eigvals(partial_transpose(choi(matexp(gen, 1.0))))
    e = np.exp(-1.0) / 2
    assert np.abs(lam - np.array([-e, e, 0.5, 0.5])).max() < 1e-12


def test_herm_eigvals_rejects_non_hermitian():
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(ValueError):
        herm_eigvals(m)


def test_herm_eigvals_sum_matches_trace():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = a + a.conj().T
        assert abs(herm_eigvals(m).sum() - np.trace(m).real) < 1e-10


def test_fixed_point_driven_phase_flip_is_maximally_mixed():
    gen = build_generator(phase_flip_spec(PhaseFlipParams(0.7)))
    rho = null_fixed_point(gen)
    assert np.abs(rho - np.eye(2) / 2).max() < 1e-10


def test_fixed_point_gad_thermal_state():
    n = 1.5
    gen = build_generator(gad_spec(GadParams(n)))
    rho = null_fixed_point(gen)
    expected = np.diag([n + 1, n]) / (2 * n + 1)
    assert np.abs(rho - expected).max() < 1e-10


def test_fixed_point_depolarizing_matches_linear_solve():
    gen = build_generator(depolarizing_spec())
    rho = null_fixed_point(gen)
    # independent oracle: brute-force linear solve of gen v = 0 with Tr v = 1
    sys = np.vstack([gen, [[1, 0, 0, 1]]])
    rhs = np.zeros(5, dtype=complex)
    rhs[-1] = 1.0
    v, *_ = np.linalg.lstsq(sys, rhs, rcond=None)
    assert np.abs(rho.flatten(order="F") - v).max() < 1e-9
    assert np.abs(rho - np.eye(2) / 2).max() < 1e-10


def test_fixed_point_degenerate_kernel_raises():
    gen = build_generator(phase_flip_spec(PhaseFlipParams(0.0)))
    with pytest.raises(DegenerateKernelError):
        null_fixed_point(gen)


def test_fixed_point_residual_small():
    for spec in (
        phase_flip_spec(PhaseFlipParams(1.3)),
        gad_spec(GadParams(0.4, kappa=0.8, theta=1.0)),
        depolarizing_spec(kappa=2.0),
    ):
        gen = build_generator(spec)
        rho = null_fixed_point(gen)
        assert np.linalg.norm(gen @ vec(rho)) < 1e-9


def test_det_examples():
    assert abs(det(np.eye(3)) - 1.0) < 1e-14
    assert abs(det(bell_pt()) - (-1 / 16)) < 1e-14
    d = np.diag([1.5, -2.0, 3.0, 0.25]).astype(complex)
    assert abs(det(d) - (1.5 * -2.0 * 3.0 * 0.25)) < 1e-12


def test_semigroup_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(11)
    specs = [
        phase_flip_spec(PhaseFlipParams(0.9)),
        gad_spec(GadParams(1.2, kappa=0.4, theta=0.7)),
        depolarizing_spec(kappa=1.0),
    ]
    for spec in specs:
        gen = build_generator(spec)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        for t in np.linspace(0.0, 10.0, 8):
            out = (matexp(gen, t) @ vec(rho)).reshape(2, 2, order="F")
            assert abs(np.trace(out) - 1.0) < 1e-10
            assert np.abs(out - out.conj().T).max() < 1e-10


@pytest.mark.parametrize("kappa", [0.0, 0.1, 0.25, 0.8, 3.0])
def test_pipeline_matches_phase_flip_spectrum_on_grid(kappa):
    p = PhaseFlipParams(kappa)
    gen = build_generator(phase_flip_spec(p))
    for t in np.linspace(0.02, 6.0, 50):
        lam = herm_eigvals(partial_transpose(choi(matexp(gen, t))))
        assert np.abs(lam - pf_spectrum(p, t)).max() < 1e-9


@pytest.mark.parametrize("n_mean", [0.0, 0.5, 2.0])
def test_pipeline_matches_gad_spectrum_on_grid(n_mean):
    p = GadParams(n_mean)
    gen = build_generator(gad_spec(p))
    for t in np.linspace(0.02, 4.0, 50):
        lam = herm_eigvals(partial_transpose(choi(matexp(gen, t))))
        assert np.abs(lam - gad_spectrum(p, t)).max() < 1e-9
