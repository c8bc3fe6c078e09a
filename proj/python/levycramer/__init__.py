"""Cramer exponents and exponential functionals of Levy processes.

Thin wrapper over the C++ core: model families with exponent
Phi(lambda) = -(1/t) log E exp(lambda xi_t), the Cramer root solver,
perpetuity samplers for A_inf = int_0^inf e^{xi_s} ds, tail estimators
for P(A_inf > t) ~ C t^{-chi}, and the closed-form validation suite.
"""

from ._core import (  # noqa: F401
    ConstantEstimate,
    CramerSolution,
    DegenerateInputError,
    DomainError,
    ExactLaw,
    HillEstimate,
    InsufficientTailError,
    KestenReport,
    KsResult,
    LadderTimeoutError,
    LevyModel,
    NoClosedFormError,
    NonTerminationError,
    NoRootError,
    ParseError,
    PathBlock,
    PlateauEstimate,
    SampleBatch,
    TailFit,
    UnsupportedTiltError,
    WaldReport,
    __version__,
    default_hill_k,
    esscher_tilt,
    estimate_c_plateau,
    estimate_constant,
    exact_law_of,
    exact_moment,
    fit_tail,
    hill_estimate,
    kesten_report,
    ks_one_sample_law,
    ks_two_sample,
    law_cdf,
    law_tail,
    load_batch,
    phi,
    phi_prime,
    sample_a_finite,
    sample_a_infinity,
    sample_block,
    sample_stable_one_sided,
    save_batch,
    smoothed_cramer_curve,
    solve_cramer,
    specfun,
    tail_constant,
    tilted_drift,
    validate,
    wald_ladder_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
