"""Monte Carlo harness, estimators and quadrature oracles"""

from .harness import MonteCarloHarness, SampleMoments
from .estimators import (
    GapCurve,
    cone_gap_probability,
    default_eps_grid,
    derivative_at_zero,
    expected_abs_det_pow,
    gap_probability,
    gap_probability_curve,
)
from .quadrature import (
    density_mass,
    expected_abs_det_power_quadrature,
    gap_derivative_quadrature,
    gap_probability_quadrature,
    integrate_symmetric,
    mellin_plus_quadrature,
)

__all__ = [
    "MonteCarloHarness",
    "SampleMoments",
    "GapCurve",
    "cone_gap_probability",
    "default_eps_grid",
    "derivative_at_zero",
    "expected_abs_det_pow",
    "gap_probability",
    "gap_probability_curve",
    "density_mass",
    "expected_abs_det_power_quadrature",
    "gap_derivative_quadrature",
    "gap_probability_quadrature",
    "integrate_symmetric",
    "mellin_plus_quadrature",
]
