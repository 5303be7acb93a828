import numpy as np
import pytest

from entsurv import (
    GadParams,
    PhaseFlipParams,
    build_generator,
    choi,
    depolarizing_spec,
    det,
    esd_criterion,
    gad_spec,
    herm_eigvals,
    matexp,
    maximally_entangled_state,
    negativity,
    null_fixed_point,
    partial_transpose,
    phase_flip_spec,
    pt_spectrum,
)
from entsurv.lindblad import LindbladSpec
from entsurv.models import PAULI_X, PAULI_Z


def test_choi_of_identity_channel_is_bell_state():
    rho = choi(np.eye(4))
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[0, 3] = expected[3, 0] = expected[3, 3] = 0.5
    assert np.abs(rho - expected).max() < 1e-14
    assert np.abs(rho - maximally_entangled_state()).max() < 1e-14


def test_choi_of_depolarizing_semigroup():
    gen = build_generator(depolarizing_spec(kappa=0.0))
    t = 0.6
    e = np.exp(-t)
    rho = choi(matexp(gen, t))
    expected = 0.25 * np.array(
        [
            [1 + e, 0, 0, 2 * e],
            [0, 1 - e, 0, 0],
            [0, 0, 1 - e, 0],
            [2 * e, 0, 0, 1 + e],
        ]
    )
    assert np.abs(rho - expected).max() < 1e-12


def test_choi_of_gad_semigroup():
    n, t = 1.3, 0.5
    gen = build_generator(gad_spec(GadParams(n)))
    rho = choi(matexp(gen, t))
    m = 2 * n + 1
    e = np.exp(-m * t)
    r = np.sqrt(e)
    expected = np.array(
        [
            [n * e + n + 1, 0, 0, m * r],
            [0, n * (1 - e), 0, 0],
            [0, 0, (n + 1) * (1 - e), 0],
            [m * r, 0, 0, (n + 1) * e + n],
        ]
    ) / (4 * n + 2)
    assert np.abs(rho - expected).max() < 1e-12


def test_choi_rejects_non_cp_map():
    # transposition acts on vec(rho) by swapping the middle components
    transpose_map = np.eye(4)[[0, 2, 1, 3]]
    with pytest.raises(ValueError):
        choi(transpose_map)


def test_partial_transpose_keeps_product_states_positive():
    # the ancilla is the slow Kronecker factor in this basis ordering
    rng = np.random.default_rng(2)
    for _ in range(20):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho_a = a @ a.conj().T
        rho_a /= np.trace(rho_a).real
        rho_b = b @ b.conj().T
        rho_b /= np.trace(rho_b).real
        product = np.kron(rho_b, rho_a)
        pt = partial_transpose(product)
        assert np.abs(pt - np.kron(rho_b.T, rho_a)).max() < 1e-14
        assert herm_eigvals(pt)[0] > -1e-12


def test_partial_transpose_of_bell_state():
    lam = pt_spectrum(maximally_entangled_state())
    assert abs(lam[0] + 0.5) < 1e-14
    assert abs(det(partial_transpose(maximally_entangled_state())) + 1 / 16) < 1e-14


def test_partial_transpose_of_dephased_choi():
    gen = build_generator(phase_flip_spec(PhaseFlipParams(0.0)))
    t = 0.9
    e = np.exp(-t) / 2
    pt = partial_transpose(choi(matexp(gen, t)))
    expected = np.array(
        [
            [0.5, 0, 0, 0],
            [0, 0, e, 0],
            [0, e, 0, 0],
            [0, 0, 0, 0.5],
        ]
    )
    assert np.abs(pt - expected).max() < 1e-12


def test_negativity_of_bell_state():
    assert abs(negativity(maximally_entangled_state()) - 0.5) < 1e-12


def test_negativity_of_dephasing_decay():
    gen = build_generator(phase_flip_spec(PhaseFlipParams(0.0)))
    for t in (0.2, 1.0, 3.5):
        assert abs(negativity(choi(matexp(gen, t))) - np.exp(-t) / 2) < 1e-12


def test_negativity_of_depolarizing():
    gen = build_generator(depolarizing_spec(kappa=0.0))
    for t in (0.1, 0.7, np.log(3.0), 2.0):
        e = np.exp(-t / 2)
        expected = e / 2 * max(e - np.sinh(t / 2), 0.0)
        assert abs(negativity(choi(matexp(gen, t))) - expected) < 1e-12


def test_esd_criterion_driven_phase_flip_certified():
    verdict = esd_criterion(build_generator(phase_flip_spec(PhaseFlipParams(0.8))))
    assert verdict.certified
    assert np.abs(verdict.fixed_point - np.eye(2) / 2).max() < 1e-10


def test_esd_criterion_pure_loss_inconclusive():
    verdict = esd_criterion(build_generator(gad_spec(GadParams(0.0))))
    assert not verdict.certified
    assert "pure" in verdict.reason


def test_esd_criterion_gad_thermal_certified():
    verdict = esd_criterion(build_generator(gad_spec(GadParams(1.0))))
    assert verdict.certified
    assert abs(verdict.fixed_point_det - 2 / 9) < 1e-10


def test_esd_criterion_degenerate_kernel_inconclusive():
    verdict = esd_criterion(build_generator(phase_flip_spec(PhaseFlipParams(0.0))))
    assert not verdict.certified
    assert "multiple" in verdict.reason


def test_pt_determinant_equals_eigenvalue_product():
    rng = np.random.default_rng(9)
    for _ in range(30):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        h = a + a.conj().T
        ops = tuple(
            rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(2)
        )
        spec = LindbladSpec(h, ops, gamma=1.0, omega=rng.uniform(0, 2))
        rho = choi(matexp(build_generator(spec), rng.uniform(0.05, 2.0)))
        pt = partial_transpose(rho)
        lam = herm_eigvals(pt)
        assert abs(det(pt).real - np.prod(lam)) < 1e-10


def test_asymptotic_choi_determinant_against_fixed_point():
    # The stationary Choi state is rho_bar x 1/2, whose partial transpose has
    # determinant (det(rho_bar)/4)^2; zero exactly when rho_bar is pure.
    for spec in (
        gad_spec(GadParams(1.0)),
        gad_spec(GadParams(0.3, kappa=0.6, theta=0.9)),
        phase_flip_spec(PhaseFlipParams(1.2)),
    ):
        gen = build_generator(spec)
        rho_bar = null_fixed_point(gen)
        asymptotic = choi(matexp(gen, 400.0))
        target = (np.real(det(rho_bar)) / 4.0) ** 2
        assert abs(det(partial_transpose(asymptotic)).real - target) < 1e-9


def test_negativity_decays_monotonically():
    specs = [
        phase_flip_spec(PhaseFlipParams(0.6)),
        gad_spec(GadParams(0.8, kappa=0.5, theta=1.1)),
        depolarizing_spec(kappa=1.5),
        LindbladSpec(PAULI_X, (PAULI_Z / np.sqrt(2),), 1.0, 0.35),
    ]
    for spec in specs:
        gen = build_generator(spec)
        values = [negativity(choi(matexp(gen, t))) for t in np.linspace(0.0, 6.0, 40)]
        for earlier, later in zip(values, values[1:]):
            assert later <= earlier + 1e-10
