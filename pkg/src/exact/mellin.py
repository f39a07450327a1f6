"""Mellin moments M+_m(beta, beta + 1) = E|det Q|^beta / 2 over G(beta, m)"""

import math

from src.exact.constants import LOG_PI
from src.exact.hypergeom import hypergeom_H
from src.exact.logvalue import LogValue
from src.utils.errors import InputDomainError, UnsupportedBetaError

LOG_HALF = math.log(0.5)


def _odd_real_tail(q: int) -> float:
    """
    S_q = (-1)^(q-1) sum_{k<q} (-1)^k Gamma(k + 3/2) / k!, rearranged into positive terms.

    Consecutive terms pair up as Gamma(2j + 3/2) / (2 Gamma(2j + 2)).
    """
    pairs = [
        0.5 * math.exp(math.lgamma(2 * j + 1.5) - math.lgamma(2 * j + 2))
        for j in range(q // 2)
    ]
    if q % 2 == 0:
        return math.fsum(pairs)
    lead = math.exp(math.lgamma(q + 0.5) - math.lgamma(q))
    return lead - math.fsum(pairs)


def _real_moment(n: int) -> LogValue:
    if n % 2 == 0:
        return LogValue.from_terms([0.5 * math.log(2.0) - LOG_PI, math.lgamma((n + 1) / 2.0)])
    q = (n - 1) // 2
    bracket = (-1) ** q + 4.0 * math.sqrt(2.0 / math.pi) * _odd_real_tail(q)
    return LogValue.from_terms([
        LOG_HALF,
        math.lgamma(n),
        -math.lgamma(q + 1),
        -(n - 1) * math.log(2.0),
        math.log(bracket),
    ])


def _complex_moment(n: int) -> LogValue:
    if n % 2 == 0:
        return LogValue.from_terms([-LOG_PI, 2.0 * math.lgamma((n + 1) / 2.0)])
    return LogValue.from_terms([math.log(n / 2.0), -LOG_PI, 2.0 * math.lgamma(n / 2.0)])


def _quaternion_moment(n: int) -> LogValue:
    two_h = hypergeom_H(n).log_value.log_abs + math.log(2.0)
    return LogValue.from_terms([
        -(n - 1) * math.log(4.0),
        -LOG_PI,
        2.0 * math.lgamma(n + 0.5),
        two_h,
    ])


def mellin_plus(beta: int, m: int) -> LogValue:
    """
    M+_m(beta, beta + 1) for beta in {1, 2, 4}.

    Args:
        beta: Scalar tier
        m: Matrix size (the closed forms are indexed by n = m + 1)

    Returns:
        Positive LogValue; m = 0 gives 1/2 (empty determinant)
    """
    if m < 0:
        raise InputDomainError(f"m must be non-negative, got {m}")
    if beta not in (1, 2, 4):
        raise UnsupportedBetaError(beta, (1, 2, 4), "closed-form Mellin moments; use the quadrature oracle")
    if m == 0:
        return LogValue(LOG_HALF)
    n = m + 1
    if beta == 1:
        return _real_moment(n)
    if beta == 2:
        return _complex_moment(n)
    return _quaternion_moment(n)
