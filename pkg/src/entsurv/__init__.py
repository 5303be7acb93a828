"""Entanglement survival time of Markovian open-system dynamics.

Qubit GKSL semigroups (phase flip, generalized amplitude damping,
depolarizing) solved through the Choi state / partial transpose pipeline, and
one-mode Gaussian bosonic channels solved through the (F, G) determinant
condition, together with the closed forms, bounds and perturbative expansions
that serve as analytic oracles.
"""

from .entanglement import (
    EsdVerdict,
    choi,
    esd_criterion,
    maximally_entangled_state,
    min_pt_eigenvalue,
    negativity,
    partial_transpose,
    pt_spectrum,
)
from .est import DIVERGENT, FINITE, HORIZON_EXCEEDED, EstResult, SweepPoint, solve_est, sweep
from .gaussian import (
    Classification,
    GaussianChannel,
    GaussianEstEquation,
    GaussianModelParams,
    classify,
    eb_boundary_value,
    est_equation_coefficients,
    est_equation_residual,
    est_large_kappa_limit,
    gaussian_est,
    gaussian_series,
    is_eb,
    model_fg,
)
from .lindblad import (
    LindbladSpec,
    build_generator,
    conjugate,
    gauge_fix,
    scale,
    trace_functional,
    unvec,
    vec,
)
from .models import (
    GadParams,
    PhaseFlipParams,
    depolarizing_est,
    depolarizing_negativity,
    depolarizing_spec,
    gad_est_dissipative,
    gad_negativity,
    gad_spec,
    gad_spectrum,
    lambert_w,
    pf_bounds,
    pf_est_equation,
    pf_negativity,
    pf_series,
    pf_spectrum,
    phase_flip_spec,
)
from .qmat import TOL, DegenerateKernelError, Propagator, det, herm_eigvals, matexp, null_fixed_point

__version__ = "0.1.0"

__all__ = [
    "TOL",
    "DegenerateKernelError",
    "Propagator",
    "det",
    "herm_eigvals",
    "matexp",
    "null_fixed_point",
    "LindbladSpec",
    "build_generator",
    "gauge_fix",
    "conjugate",
    "scale",
    "trace_functional",
    "vec",
    "unvec",
    "choi",
    "partial_transpose",
    "pt_spectrum",
    "min_pt_eigenvalue",
    "negativity",
    "esd_criterion",
    "EsdVerdict",
    "maximally_entangled_state",
    "EstResult",
    "SweepPoint",
    "solve_est",
    "sweep",
    "FINITE",
    "DIVERGENT",
    "HORIZON_EXCEEDED",
    "PhaseFlipParams",
    "GadParams",
    "phase_flip_spec",
    "gad_spec",
    "depolarizing_spec",
    "pf_negativity",
    "pf_spectrum",
    "pf_est_equation",
    "pf_bounds",
    "pf_series",
    "lambert_w",
    "gad_negativity",
    "gad_spectrum",
    "gad_est_dissipative",
    "depolarizing_negativity",
    "depolarizing_est",
    "GaussianChannel",
    "GaussianModelParams",
    "GaussianEstEquation",
    "Classification",
    "classify",
    "is_eb",
    "eb_boundary_value",
    "model_fg",
    "gaussian_est",
    "gaussian_series",
    "est_equation_coefficients",
    "est_equation_residual",
    "est_large_kappa_limit",
]
