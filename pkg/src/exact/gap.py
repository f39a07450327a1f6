"""Derivative at zero of the gap probability and its asymptotics"""

import math

from src.exact.constants import log_norm_ratio_terms
from src.exact.logvalue import LogValue
from src.exact.mellin import mellin_plus
from src.utils.errors import InputDomainError


def gap_derivative_terms(beta: int, n: int, log_mellin: float) -> list:
    """Summands of log |f'(0)| = log(2n) + log C(n)/C(n-1) + log 2 + log M+_{n-1}"""
    return [math.log(2.0 * n), *log_norm_ratio_terms(beta, n), math.log(2.0), log_mellin]


def gap_derivative_zero(beta: int, n: int) -> LogValue:
    """
    f'(0) for f(eps) = P{sigma(Q) >= eps} over G(beta, n), beta in {1, 2, 4}.

    f'(0) = -2n (C(n) / C(n-1)) 2 M+_{n-1}(beta, beta + 1). Other betas go
    through the quadrature oracle in the Monte Carlo package.
    """
    if n < 1:
        raise InputDomainError(f"n must be at least 1, got {n}")
    log_m = mellin_plus(beta, n - 1).log_abs
    return LogValue.from_terms(gap_derivative_terms(beta, n, log_m), sign=-1)


def gap_derivative_asymptotic(n: int) -> float:
    """-(2 sqrt 2 / pi) sqrt n, the leading large-n behaviour of f'(0) for every beta"""
    return -(2.0 * math.sqrt(2.0) / math.pi) * math.sqrt(n)


def mellin_plus_asymptotic(beta: int, m: int) -> LogValue:
    """
    Large-m approximation of M+_m read off the gap asymptotics at n = m + 1.

    M+_m ~ (2 sqrt 2 / pi) sqrt(n) / (4 n C(n) / C(n-1)).
    """
    if m < 0:
        raise InputDomainError(f"m must be non-negative, got {m}")
    n = m + 1
    return LogValue.from_terms([
        0.5 * math.log(2.0) - math.log(math.pi),
        -0.5 * math.log(n),
        -math.log(2.0),
        *[-t for t in log_norm_ratio_terms(beta, n)],
    ])
