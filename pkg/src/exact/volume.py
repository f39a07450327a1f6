"""Intrinsic volume of the singular locus on the unit sphere of G(beta, n)"""

import logging
import math
from typing import NamedTuple

from src.exact.constants import (
    HALF_LOG_2PI,
    cone_cylinder_factor,
    log_norm_ratio_terms,
    real_dimension,
    sphere_volume,
    sphere_volume_terms,
)
from src.exact.gap import gap_derivative_zero
from src.exact.logvalue import LogValue
from src.exact.mellin import mellin_plus
from src.utils.errors import ConvergenceError, InputDomainError

logger = logging.getLogger(__name__)

AGREEMENT = 1e-12


class SigmaVolume(NamedTuple):
    absolute: LogValue
    ratio_to_sphere: LogValue


class SigmaVolumeForms(NamedTuple):
    """The same ratio |Sigma| / |S^(N-2)| reached by different derivations"""
    theorem: LogValue
    remark: LogValue
    cone: LogValue


def _check_domain(beta: int, n: int):
    if beta not in (1, 2, 4):
        raise InputDomainError(f"volume formula needs beta in (1, 2, 4), got {beta}")
    if n < 2:
        raise InputDomainError(f"singular locus volume needs n >= 2, got {n}")


def sigma_volume_forms(beta: int, n: int) -> SigmaVolumeForms:
    """
    Three expressions for |Sigma(beta, n)| / |S^(N-2)|.

    theorem: 2n sqrt(2 pi) C(n)/C(n-1) M+_{n-1}
    remark:  2n beta^((n beta - beta + 1)/2) Gamma(1 + beta/2) / Gamma(1 + beta n/2) M+_{n-1}
    cone:    |S^(N-1)| (cone factor) |f'(0)| / 2, divided by |S^(N-2)|
    """
    _check_domain(beta, n)
    log_m = mellin_plus(beta, n - 1).log_abs
    theorem = LogValue.from_terms([math.log(2.0 * n), HALF_LOG_2PI, *log_norm_ratio_terms(beta, n), log_m])
    remark = LogValue.from_terms([
        math.log(2.0 * n),
        ((n * beta - beta + 1) / 2.0) * math.log(beta),
        math.lgamma(1.0 + beta / 2.0),
        -math.lgamma(1.0 + beta * n / 2.0),
        log_m,
    ])
    N = real_dimension(beta, n)
    cone = LogValue.from_terms([
        sphere_volume(N - 1).log_abs,
        cone_cylinder_factor(N).log_abs,
        gap_derivative_zero(beta, n).log_abs,
        -math.log(2.0),
        -sphere_volume(N - 2).log_abs,
    ])
    return SigmaVolumeForms(theorem, remark, cone)


def sigma_volume(beta: int, n: int) -> SigmaVolume:
    """
    |Sigma(beta, n)|, the volume of unit-norm singular matrices, and its ratio to |S^(N-2)|.

    Raises:
        ConvergenceError: the two closed forms disagree beyond 1e-12
    """
    forms = sigma_volume_forms(beta, n)
    drift = forms.theorem.relative_difference(forms.remark)
    if drift > AGREEMENT:
        raise ConvergenceError(
            f"volume closed forms disagree for beta={beta}, n={n}",
            details={'relative_difference': drift},
        )
    N = real_dimension(beta, n)
    absolute = LogValue.from_terms([forms.theorem.log_abs, *sphere_volume_terms(N - 2)])
    return SigmaVolume(absolute, forms.theorem)


def volume_ratio_asymptotic(n: int) -> float:
    """(2 / sqrt pi) sqrt n, the leading behaviour of |Sigma| / |S^(N-2)|"""
    return (2.0 / math.sqrt(math.pi)) * math.sqrt(n)
