"""Monte Carlo estimators of gap probabilities, their slope at zero and determinant moments"""

import logging
import math
from enum import Enum
from functools import partial
from typing import List, Optional, Sequence, Union

import numpy as np

from src.ensembles.samplers import sample_spectra
from src.exact.constants import cone_cylinder_factor
from src.exact.gap import gap_derivative_asymptotic
from src.models.ensemble import EnsembleSpec
from src.models.estimate import Estimate
from src.montecarlo.harness import MonteCarloHarness
from src.utils.config import get_settings
from src.utils.errors import InputDomainError

logger = logging.getLogger(__name__)


class GapCurve(str, Enum):
    """Event whose probability is estimated"""
    CYLINDER = "cylinder"  # sigma(Q) >= eps
    CONE = "cone"  # sigma(Q) >= eps ||Q||


def _sampling_method(spec: EnsembleSpec) -> str:
    return "matrix" if spec.is_matrix_tier else "tridiagonal"


def _gap_statistic(spec: EnsembleSpec, curve: GapCurve, rng, count: int) -> np.ndarray:
    """sigma(Q), or sigma(Q) / ||Q|| for the cone event"""
    spectra = sample_spectra(spec, rng, count, _sampling_method(spec))
    sigma = np.min(np.abs(spectra), axis=1)
    if curve is GapCurve.CONE:
        sigma = sigma / np.sqrt(np.sum(spectra ** 2, axis=1))
    return sigma


def _survival_kernel(spec, curve, eps: np.ndarray, rng, count):
    stat = _gap_statistic(spec, curve, rng, count)
    return stat[:, None] >= eps[None, :]


def _hit_kernel(spec, curve, eps: np.ndarray, rng, count):
    stat = _gap_statistic(spec, curve, rng, count)
    return stat[:, None] < eps[None, :]


def gap_probability_curve(
    spec: EnsembleSpec,
    eps_grid: Sequence[float],
    trials: int,
    curve: Union[GapCurve, str] = GapCurve.CYLINDER,
    threads: Optional[int] = None,
) -> List[Estimate]:
    """Survival probabilities at every eps of the grid from one shared sample"""
    curve = GapCurve(curve)
    eps = np.asarray(eps_grid, dtype=float)
    if eps.ndim != 1 or eps.size == 0 or np.any(eps < 0) or not np.all(np.isfinite(eps)):
        raise InputDomainError("eps values must be finite and non-negative")
    moments = MonteCarloHarness(threads).run(
        partial(_survival_kernel, spec, curve, eps), trials, spec.seed, label=f"gap-{curve.value}"
    )
    return [moments.estimate(j, eps=float(e), curve=curve.value) for j, e in enumerate(eps)]


def gap_probability(spec: EnsembleSpec, eps: float, trials: int, threads: Optional[int] = None) -> Estimate:
    """f(eps) = P{sigma(Q) >= eps} with binomial standard error"""
    return gap_probability_curve(spec, [eps], trials, GapCurve.CYLINDER, threads)[0]


def cone_gap_probability(spec: EnsembleSpec, eps: float, trials: int, threads: Optional[int] = None) -> Estimate:
    """g(eps) = P{sigma(Q) >= eps ||Q||_F}"""
    return gap_probability_curve(spec, [eps], trials, GapCurve.CONE, threads)[0]


def _resolve_curve(prob_curve) -> GapCurve:
    if prob_curve is gap_probability:
        return GapCurve.CYLINDER
    if prob_curve is cone_gap_probability:
        return GapCurve.CONE
    return GapCurve(prob_curve)


def default_eps_grid(spec: EnsembleSpec, trials: int, curve: Union[GapCurve, str] = GapCurve.CYLINDER) -> List[float]:
    """
    Geometric grid (a, 2a, 4a) with 1 - f(a) close to grid_signal / sqrt(trials).

    The slope guess is the large-n value (2 sqrt 2 / pi) sqrt n, scaled by the
    cone factor for the cone event.
    """
    curve = GapCurve(curve)
    slope = -gap_derivative_asymptotic(spec.n)
    if curve is GapCurve.CONE:
        slope *= cone_cylinder_factor(spec.real_dimension).value
    a = get_settings().montecarlo.grid_signal / (math.sqrt(trials) * slope)
    return [a, 2.0 * a, 4.0 * a]


def _validate_grid(eps_grid) -> np.ndarray:
    eps = np.asarray(eps_grid, dtype=float)
    if (
        eps.ndim != 1
        or eps.size == 0
        or not np.all(np.isfinite(eps))
        or np.any(eps <= 0)
        or np.any(np.diff(eps) <= 0)
    ):
        raise InputDomainError(
            "degenerate eps grid: need a non-empty, strictly ascending list of positive values",
            details={'eps_grid': np.asarray(eps_grid, dtype=float).tolist()},
        )
    return eps


def derivative_at_zero(
    prob_curve,
    spec: EnsembleSpec,
    eps_grid: Optional[Sequence[float]] = None,
    trials: int = 100_000,
    threads: Optional[int] = None,
) -> Estimate:
    """
    Slope at zero of 1 - f(eps), i.e. -f'(0), by weighted least squares through the origin.

    Args:
        prob_curve: gap_probability, cone_gap_probability, or a GapCurve
        spec: Ensemble and master seed
        eps_grid: Strictly ascending positive grid; defaults to default_eps_grid
        trials: Number of sampled matrices (shared by all grid points)

    Returns:
        Estimate whose stderr comes from the full covariance of the grid
        indicators and whose `bias` bounds the curvature error, O(max eps)
    """
    curve = _resolve_curve(prob_curve)
    eps = _validate_grid(eps_grid if eps_grid is not None else default_eps_grid(spec, trials, curve))

    moments = MonteCarloHarness(threads).run(
        partial(_hit_kernel, spec, curve, eps), trials, spec.seed, label=f"deriv0-{curve.value}"
    )
    y = moments.mean
    cov = moments.covariance / trials

    floor = 1.0 / trials ** 2
    w = 1.0 / np.maximum(np.diag(cov), floor)
    s2 = float(np.sum(w * eps ** 2))
    c = w * eps / s2
    slope = float(np.dot(c, y))
    stderr = math.sqrt(max(float(c @ cov @ c), 0.0))

    bias = 0.0
    if eps.size >= 2:
        # weighted quadratic fit y = a eps + b eps^2; bias of the linear slope is b * sum(w eps^3) / s2
        design = np.stack([eps, eps ** 2], axis=1)
        normal = np.linalg.inv(design.T @ (w[:, None] * design))
        projector = normal @ (design.T * w)
        b = float(projector[1] @ y)
        b_se = math.sqrt(max(float(projector[1] @ cov @ projector[1]), 0.0))
        bias = (abs(b) + 2.0 * b_se) * float(np.sum(w * eps ** 3)) / s2

    logger.debug(f"derivative at zero: slope={slope:.6g} stderr={stderr:.3g} bias={bias:.3g}")
    return Estimate(
        mean=slope,
        stderr=stderr,
        trials=trials,
        seed=spec.seed,
        wall_seconds=moments.wall_seconds,
        bias=bias,
        extra={
            'curve': curve.value,
            'eps_grid': eps.tolist(),
            'one_minus_f': y.tolist(),
        },
    )


def _abs_det_kernel(spec: EnsembleSpec, power: float, rng, count):
    spectra = sample_spectra(spec, rng, count, _sampling_method(spec))
    return np.prod(np.abs(spectra), axis=1) ** power


def expected_abs_det_pow(
    spec: EnsembleSpec, power: float, trials: int, threads: Optional[int] = None
) -> Estimate:
    """E |det Q|^power over G(beta, n)"""
    if not power > 0:
        raise InputDomainError(f"power must be positive, got {power}")
    moments = MonteCarloHarness(threads).run(
        partial(_abs_det_kernel, spec, power), trials, spec.seed, label="absdet"
    )
    return moments.estimate(0, power=power)
