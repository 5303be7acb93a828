import numpy as np
import pytest

from entsurv import (
    DIVERGENT,
    FINITE,
    HORIZON_EXCEEDED,
    GadParams,
    PhaseFlipParams,
    Propagator,
    build_generator,
    choi,
    depolarizing_spec,
    gad_est_dissipative,
    gad_spec,
    min_pt_eigenvalue,
    negativity,
    pf_bounds,
    phase_flip_spec,
    solve_est,
    sweep,
)
from entsurv.est import _first_zero
from entsurv.lindblad import LindbladSpec
from entsurv.models import PAULI_X


def pf_gen(kappa, theta=np.pi / 2, gamma=1.0):
    return build_generator(phase_flip_spec(PhaseFlipParams(kappa, theta), gamma))


def test_depolarizing_survival_time():
    res = solve_est(build_generator(depolarizing_spec()), 1.0)
    assert res.status == FINITE
    assert abs(res.t_rescaled - np.log(3.0)) < 1e-8
    assert res.residual < 1e-10


def test_undriven_phase_flip_diverges():
    res = solve_est(pf_gen(0.0), 1.0)
    assert res.status == DIVERGENT
    assert res.t_ent is None


def test_gad_dissipative_closed_form():
    n = 1.0
    res = solve_est(build_generator(gad_spec(GadParams(n))), 1.0)
    assert res.status == FINITE
    assert abs(res.t_rescaled - gad_est_dissipative(n)) < 1e-9
    assert abs(res.t_rescaled - np.arccosh(1 + 9 / 4) / 3) < 1e-8


def test_rescaling_field():
    gamma = 2.5
    res = solve_est(build_generator(depolarizing_spec(gamma=gamma)), gamma)
    assert abs(res.t_rescaled - gamma * res.t_ent) < 1e-12 * res.t_rescaled
    assert abs(res.t_rescaled - np.log(3.0)) < 1e-8


def test_bracketing_soundness():
    gen = pf_gen(1.0)
    prop = Propagator(gen)
    res = solve_est(gen, 1.0)
    t = res.t_ent
    assert negativity(choi(prop.at(t * (1 - 1e-7)))) > 0
    assert negativity(choi(prop.at(t * (1 + 1e-7)))) <= 1e-12
    assert negativity(choi(prop.at(t - 1e-6))) > 0
    assert negativity(choi(prop.at(t + 1e-6))) <= 1e-12


def test_entanglement_breaking_is_permanent():
    for gen in (pf_gen(0.7), build_generator(gad_spec(GadParams(1.0)))):
        prop = Propagator(gen)
        res = solve_est(gen, 1.0)
        for t in np.linspace(res.t_ent * 1.001, 5 * res.t_ent, 20):
            assert negativity(choi(prop.at(t))) <= 1e-12


def test_newton_polish_agrees_with_bisection():
    for kappa in (0.4, 1.0, 3.0):
        gen = pf_gen(kappa)
        prop = Propagator(gen)

        def g(t):
            return min_pt_eigenvalue(choi(prop.at(t)))

        with_polish, *_ = _first_zero(g, 50.0, 1e-10, newton=True)
        without, *_ = _first_zero(g, 50.0, 1e-10, newton=False)
        assert abs(with_polish - without) < 1e-9 * without


def test_horizon_exceeded_with_finite_certificate():
    res = solve_est(build_generator(gad_spec(GadParams(1.0))), 1.0, horizon=0.1)
    assert res.status == HORIZON_EXCEEDED


def test_unitary_semigroup_never_breaks():
    gen = build_generator(LindbladSpec(PAULI_X, (), gamma=0.0, omega=1.0))
    assert solve_est(gen, 0.0).status == DIVERGENT


def test_scaling_law_through_solver():
    base = solve_est(pf_gen(1.0), 1.0)
    for q in (0.5, 2.0, 10.0):
        res = solve_est(q * pf_gen(1.0), q)
        assert abs(res.t_ent - base.t_ent / q) < 1e-8 * base.t_ent / q
        assert abs(res.t_rescaled - base.t_rescaled) < 1e-8 * base.t_rescaled


def test_conjugation_invariance_through_solver():
    rng = np.random.default_rng(21)
    from entsurv import conjugate

    gen = pf_gen(0.9)
    base = solve_est(gen, 1.0)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    u, _ = np.linalg.qr(a)
    res = solve_est(conjugate(gen, u), 1.0)
    assert abs(res.t_ent - base.t_ent) < 1e-8 * base.t_ent


def test_sweep_depolarizing_constant():
    def gen_for(kappa):
        return build_generator(depolarizing_spec(kappa=kappa))

    points = sweep(gen_for, [0.0, 1.0, 5.0], 1.0)
    for pt in points:
        assert pt.error is None
        assert abs(pt.result.t_rescaled - np.log(3.0)) < 1e-8


def test_sweep_phase_flip_within_bounds():
    def gen_for(kappa):
        return pf_gen(kappa)

    points = sweep(gen_for, [1.0, 2.0, 5.0], 1.0)
    for pt in points:
        lower, upper = pf_bounds(pt.kappa)
        assert lower - 1e-9 <= pt.result.t_rescaled <= upper + 1e-9


def test_sweep_axis_aligned_driving_always_diverges():
    def gen_for(kappa):
        return pf_gen(kappa, theta=0.0)

    for pt in sweep(gen_for, [0.5, 1.0, 4.0], 1.0):
        assert pt.result.status == DIVERGENT


def test_sweep_captures_per_point_errors():
    def gen_for(kappa):
        if kappa == 2.0:
            raise RuntimeError("boom")
        return pf_gen(kappa)

    points = sweep(gen_for, [1.0, 2.0, 3.0], 1.0)
    assert points[0].error is None and points[2].error is None
    assert points[1].error == "boom"
    assert points[1].result is None


def test_sweep_parallel_matches_serial():
    kappas = [0.5, 1.0, 1.5, 2.0]

    def gen_for(kappa):
        return pf_gen(kappa)

    serial = sweep(gen_for, kappas, 1.0, workers=1)
    parallel = sweep(gen_for, kappas, 1.0, workers=3)
    for a, b in zip(serial, parallel):
        assert a.kappa == b.kappa
        assert a.result.status == b.result.status
        assert a.result.t_ent == pytest.approx(b.result.t_ent, abs=0, rel=1e-15)
