"""Normalizing constants and sphere geometry, all in log space"""

import math
from functools import lru_cache
from typing import List

from src.exact.logvalue import LogValue
from src.utils.errors import InputDomainError

LOG_2PI = math.log(2.0 * math.pi)
HALF_LOG_2PI = 0.5 * LOG_2PI
LOG_PI = math.log(math.pi)


def _require_beta(beta: float):
    if not beta > 0:
        raise InputDomainError(f"beta must be positive, got {beta}")


@lru_cache(maxsize=4096)
def log_norm_constant(beta: float, n: int) -> LogValue:
    """
    log C(beta, n), the constant making the eigenvalue density integrate to one.

    C = (2 pi)^(-n/2) beta^(n/2 + beta n (n-1)/4) prod_{j=1..n} Gamma(1 + beta/2) / Gamma(1 + j beta/2)
    """
    _require_beta(beta)
    if n < 0:
        raise InputDomainError(f"n must be non-negative, got {n}")
    if n == 0:
        return LogValue(0.0)
    terms = [
        -0.5 * n * LOG_2PI,
        (n * (n - 1) * beta / 4.0 + n / 2.0) * math.log(beta),
        n * math.lgamma(1.0 + beta / 2.0),
    ]
    terms.extend(-math.lgamma(1.0 + j * beta / 2.0) for j in range(1, n + 1))
    return LogValue.from_terms(terms)


def log_norm_ratio_terms(beta: float, n: int) -> List[float]:
    """Summands of log C(beta, n) - log C(beta, n-1) in closed form"""
    return [
        ((n - 1) * beta / 2.0 + 0.5) * math.log(beta),
        math.lgamma(1.0 + beta / 2.0),
        -HALF_LOG_2PI,
        -math.lgamma(1.0 + beta * n / 2.0),
    ]


def log_norm_ratio(beta: float, n: int) -> LogValue:
    """C(beta, n) / C(beta, n-1)"""
    _require_beta(beta)
    if n < 1:
        raise InputDomainError(f"n must be at least 1, got {n}")
    return LogValue.from_terms(log_norm_ratio_terms(beta, n))


def sphere_volume_terms(m: int) -> List[float]:
    return [math.log(2.0), 0.5 * (m + 1) * LOG_PI, -math.lgamma(0.5 * (m + 1))]


def sphere_volume(m: int) -> LogValue:
    """|S^m| = 2 pi^((m+1)/2) / Gamma((m+1)/2)"""
    if m < 0:
        raise InputDomainError(f"sphere dimension must be non-negative, got {m}")
    return LogValue.from_terms(sphere_volume_terms(m))


def cone_cylinder_factor(N: int) -> LogValue:
    """sqrt(2) Gamma(N/2) / Gamma((N-1)/2), the ratio g'(0) / f'(0) in dimension N"""
    if N < 2:
        raise InputDomainError(f"dimension must be at least 2, got {N}")
    return LogValue.from_terms([0.5 * math.log(2.0), math.lgamma(N / 2.0), -math.lgamma((N - 1) / 2.0)])


def c_n_even(n: int) -> float:
    """c_n = Gamma((n+1)/2) / (Gamma(n/2) Gamma(1/2) Gamma(3/2)) for even n"""
    if n < 2 or n % 2:
        raise InputDomainError(f"c_n is defined for even n >= 2, got {n}")
    return math.exp(math.fsum([
        math.lgamma((n + 1) / 2.0),
        -math.lgamma(n / 2.0),
        -math.lgamma(0.5),
        -math.lgamma(1.5),
    ]))


def real_dimension(beta: int, n: int) -> int:
    """N_beta = n + n(n-1)beta/2"""
    return n + n * (n - 1) * beta // 2
