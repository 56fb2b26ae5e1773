"""Normalised largest critical values of derivatives of Chebyshev polynomials."""

from .asympt import constants, tau_star_asymptotic, tau_star_exact, tau_asymptotic_uniform
from .bounds import bound_set, lower_bound, ratio_bound, tau_star_upper, upper_bounds
from .errors import DomainError, LogOverflowError, NumericError
from .orthopoly import chebyshev_derivative, gegenbauer
from .quadrature import classical_weights, golub_welsch, petras_weights
from .roots import all_zeros, largest_zero, omega
from .tau import s_sum, tau_closed_form, tau_direct
from .xprec import LogScaled

__all__ = [
    "DomainError",
    "LogOverflowError",
    "NumericError",
    "LogScaled",
    "chebyshev_derivative",
    "gegenbauer",
    "omega",
    "largest_zero",
    "all_zeros",
    "s_sum",
    "tau_direct",
    "tau_closed_form",
    "upper_bounds",
    "lower_bound",
    "ratio_bound",
    "bound_set",
    "tau_star_upper",
    "constants",
    "tau_star_exact",
    "tau_star_asymptotic",
    "tau_asymptotic_uniform",
    "petras_weights",
    "classical_weights",
    "golub_welsch",
]

__version__ = "0.1.0"
