"""Soft-graviton bremsstrahlung and decoherence physics."""

from physics.bloch_nordsieck import (
    finite_time_log_slope,
    finite_time_real_factor,
    interference_ratio,
    nu_from_quadrature,
    nu_nonrelativistic,
    nu_relativistic,
    x0_closed_form,
    x_coefficient,
    x_delta_nonrelativistic,
    x_delta_relativistic,
    xi_density,
)
from physics.decoherence_coefficients import (
    emission_log_coefficient,
    interference_coefficient,
    interference_coefficient_massless,
    interference_coefficient_massless_small_angle,
    interference_coefficient_small_angle,
)
from physics.kinematics import (
    ElasticKinematics,
    FourVector,
    SuperpositionPair,
    build_elastic_cm,
    minkowski_dot,
    superpose,
)
from physics.soft_radiation import (
    branch_difference_density,
    eikonal_bracket_density,
    pairwise_density,
    polarization_contraction,
    transverse_traceless_norm,
)
from physics.special_functions import (
    cosine_integral,
    d_weinberg,
    d_weinberg_deriv,
    d_weinberg_increment,
    entire_cosine_integral,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # Kinematics
    "FourVector",
    "ElasticKinematics",
    "SuperpositionPair",
    "minkowski_dot",
    "build_elastic_cm",
    "superpose",
    # Special functions
    "d_weinberg",
    "d_weinberg_deriv",
    "d_weinberg_increment",
    "cosine_integral",
    "entire_cosine_integral",
    # Soft radiation
    "polarization_contraction",
    "pairwise_density",
    "transverse_traceless_norm",
    "eikonal_bracket_density",
    "branch_difference_density",
    # Coefficients
    "emission_log_coefficient",
    "interference_coefficient",
    "interference_coefficient_small_angle",
    "interference_coefficient_massless",
    "interference_coefficient_massless_small_angle",
    # Bloch-Nordsieck
    "xi_density",
    "x_coefficient",
    "x0_closed_form",
    "x_delta_relativistic",
    "x_delta_nonrelativistic",
    "nu_relativistic",
    "nu_nonrelativistic",
    "nu_from_quadrature",
    "interference_ratio",
    "finite_time_real_factor",
    "finite_time_log_slope",
]
