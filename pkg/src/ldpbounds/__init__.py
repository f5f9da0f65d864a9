"""Divergences on finite alphabets, LDP certification, and contraction bounds."""

from .curves import BoundCurve
from .divergence import (
    CHI2_GENERATOR,
    GENERATORS,
    KL_GENERATOR,
    TV_GENERATOR,
    Channel,
    Distribution,
    FDivGenerator,
    contraction_coefficient_hs,
    d_max,
    d_max_smooth,
    e_gamma,
    f_divergence,
    f_divergence_integral,
    kl,
    pushforward,
)
from .errors import DomainError, ValidationError
from .fdiv_bounds import (
    FdivBoundInputs,
    bound_comparison_grid,
    dasgupta_kl_bound,
    f_div_contraction_bound,
    kl_contraction_bound,
    lam_from_channel,
    lam_from_output,
)
from .harness import (
    SUITE_NAMES,
    VerificationReport,
    empirical_contraction,
    run_suite,
    sample_distribution_pair,
)
from .ldp import (
    PrivacyBudget,
    is_ldp,
    make_bsc,
    make_randomized_response,
    sample_ldp_channel,
    tightest_delta,
    tightest_epsilon,
)
from .sdpi import (
    CompositionParams,
    SdpiParams,
    achievability_value,
    composition_bound,
    dmax_from_egamma,
    dmax_from_smooth,
    e_gamma_vanishes,
    f_gamma_upper,
    hs_interpolation,
    linear_sdpi_coeff,
    nonlinear_sdpi_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCurve",
    "CHI2_GENERATOR",
    "Channel",
    "CompositionParams",
    "Distribution",
    "DomainError",
    "FDivGenerator",
    "FdivBoundInputs",
    "GENERATORS",
    "KL_GENERATOR",
    "PrivacyBudget",
    "SUITE_NAMES",
    "SdpiParams",
    "TV_GENERATOR",
    "ValidationError",
    "VerificationReport",
    "achievability_value",
    "bound_comparison_grid",
    "composition_bound",
    "contraction_coefficient_hs",
    "d_max",
    "d_max_smooth",
    "dasgupta_kl_bound",
    "dmax_from_egamma",
    "dmax_from_smooth",
    "e_gamma",
    "e_gamma_vanishes",
    "empirical_contraction",
    "f_div_contraction_bound",
    "f_divergence",
    "f_divergence_integral",
    "f_gamma_upper",
    "hs_interpolation",
    "is_ldp",
    "kl",
    "kl_contraction_bound",
    "lam_from_channel",
    "lam_from_output",
    "linear_sdpi_coeff",
    "make_bsc",
    "make_randomized_response",
    "nonlinear_sdpi_bound",
    "pushforward",
    "run_suite",
    "sample_distribution_pair",
    "sample_ldp_channel",
    "tightest_delta",
    "tightest_epsilon",
]
