"""
Deterministic quadrature oracles over the eigenvalue density for small n.

A symmetric integrand over R^n is n! times its integral over sorted
eigenvalues. Sorted eigenvalues are split by how many are negative, and each
piece is parametrised by the gaps between neighbours (and to +-eps), so the
kinks of |Delta|, |det| and the gap indicator sit on the boundary of the
integration box. Each axis uses composite Gauss-Legendre on [0, 2 cutoff / sqrt(beta)].
"""

import math
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from src.ensembles.density import log_joint_density
from src.exact.gap import gap_derivative_terms
from src.exact.logvalue import LogValue
from src.models.settings import QuadratureSettings
from src.utils.config import get_settings
from src.utils.errors import InputDomainError

_CHUNK = 1 << 16

# integrand(lambdas of shape (P, n), sorted ascending) -> (P,)
Integrand = Callable[[np.ndarray], np.ndarray]


def _axis_rule(length: float, panels: int, nodes: int):
    x, w = leggauss(nodes)
    h = length / panels
    starts = np.arange(panels) * h
    points = (starts[:, None] + (x[None, :] + 1.0) * (h / 2.0)).ravel()
    weights = np.tile(w * (h / 2.0), panels)
    return points, weights


def integrate_symmetric(
    beta: float,
    n: int,
    integrand: Integrand,
    eps: float = 0.0,
    settings: Optional[QuadratureSettings] = None,
) -> float:
    """
    Integral over {|lambda_i| >= eps for all i} of a permutation-symmetric integrand.

    Args:
        beta: Sets the truncation length of each gap axis
        n: Number of eigenvalues (at most quadrature.max_dimension)
        integrand: Vectorized over rows of sorted eigenvalues
        eps: Half-width of the excluded interval around zero
    """
    settings = settings or get_settings().quadrature
    if n < 0 or n > settings.max_dimension:
        raise InputDomainError(
            f"quadrature supports 0 <= n <= {settings.max_dimension}, got {n}"
        )
    if eps < 0:
        raise InputDomainError(f"eps must be non-negative, got {eps}")
    if n == 0:
        return float(integrand(np.zeros((1, 0)))[0])

    t, w = _axis_rule(2.0 * settings.cutoff / math.sqrt(beta), settings.panels, settings.nodes)
    shape = (len(t),) * n
    total = len(t) ** n
    pieces = []
    for start in range(0, total, _CHUNK):
        axes = np.unravel_index(np.arange(start, min(total, start + _CHUNK)), shape)
        gaps = np.stack([t[a] for a in axes], axis=1)
        weights = np.prod(np.stack([w[a] for a in axes], axis=1), axis=1)
        for negatives in range(n + 1):
            below = -eps - np.cumsum(gaps[:, :negatives], axis=1)
            above = eps + np.cumsum(gaps[:, negatives:], axis=1)
            lam = np.concatenate([below[:, ::-1], above], axis=1)
            pieces.append(float(np.dot(weights, integrand(lam))))
    return math.factorial(n) * math.fsum(pieces)


def density_mass(beta: float, n: int, log_density: Callable = log_joint_density, eps: float = 0.0) -> float:
    """Integral of exp(log_density) over {|lambda_i| >= eps}; 1 at eps = 0 when normalised"""
    return integrate_symmetric(beta, n, lambda lam: np.exp(log_density(beta, lam)), eps)


def gap_probability_quadrature(beta: float, n: int, eps: float) -> float:
    """f(eps) = P{sigma(Q) >= eps} for small n"""
    return density_mass(beta, n, eps=eps)


def expected_abs_det_power_quadrature(beta: float, m: int, power: float) -> float:
    """E |det Q|^power over G(beta, m) for small m and any beta > 0"""
    if m == 0:
        return 1.0
    return integrate_symmetric(
        beta, m,
        lambda lam: np.exp(log_joint_density(beta, lam)) * np.prod(np.abs(lam), axis=1) ** power,
    )


def mellin_plus_quadrature(beta: float, m: int) -> LogValue:
    """M+_m(beta, beta + 1) = E|det|^beta / 2, for any beta > 0"""
    return LogValue(math.log(0.5 * expected_abs_det_power_quadrature(beta, m, beta)))


def gap_derivative_quadrature(beta: float, n: int) -> LogValue:
    """f'(0) for any beta > 0 and n <= max_dimension + 1, with the Mellin moment by quadrature"""
    if n < 1:
        raise InputDomainError(f"n must be at least 1, got {n}")
    log_m = mellin_plus_quadrature(beta, n - 1).log_abs
    return LogValue.from_terms(gap_derivative_terms(beta, n, log_m), sign=-1)
