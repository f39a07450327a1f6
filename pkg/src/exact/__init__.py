"""Closed-form constants, Mellin moments, gap derivatives and volumes"""

from .logvalue import LogValue
from .constants import (
    c_n_even,
    cone_cylinder_factor,
    log_norm_constant,
    log_norm_ratio,
    real_dimension,
    sphere_volume,
)
from .hypergeom import HypergeomValue, hypergeom_H
from .mellin import mellin_plus
from .gap import gap_derivative_asymptotic, gap_derivative_zero, mellin_plus_asymptotic
from .volume import (
    SigmaVolume,
    SigmaVolumeForms,
    sigma_volume,
    sigma_volume_forms,
    volume_ratio_asymptotic,
)
from .euler import euler_char_expectation
from .summary import ExactConstants, exact_constants

__all__ = [
    "LogValue",
    "c_n_even",
    "cone_cylinder_factor",
    "log_norm_constant",
    "log_norm_ratio",
    "real_dimension",
    "sphere_volume",
    "HypergeomValue",
    "hypergeom_H",
    "mellin_plus",
    "gap_derivative_asymptotic",
    "gap_derivative_zero",
    "mellin_plus_asymptotic",
    "SigmaVolume",
    "SigmaVolumeForms",
    "sigma_volume",
    "sigma_volume_forms",
    "volume_ratio_asymptotic",
    "euler_char_expectation",
    "ExactConstants",
    "exact_constants",
]
