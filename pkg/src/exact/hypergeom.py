"""Terminating hypergeometric sum behind the quaternion Mellin moment"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from src.exact.logvalue import LogValue
from src.utils.errors import InputDomainError

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class HypergeomValue:
    """Exact rational value with its log-space view"""

    fraction: Fraction

    @property
    def numerator(self) -> int:
        return self.fraction.numerator

    @property
    def denominator(self) -> int:
        return self.fraction.denominator

    @property
    def log_value(self) -> LogValue:
        if self.fraction == 0:
            return LogValue.zero()
        sign = 1 if self.fraction > 0 else -1
        # big rationals: log of numerator and denominator separately
        return LogValue(_log_int(abs(self.numerator)) - _log_int(self.denominator), sign)

    def __float__(self) -> float:
        return float(self.fraction)


def _log_int(k: int) -> float:
    bits = k.bit_length()
    if bits <= 1000:
        return math.log(k)
    shift = bits - 64
    return math.log(k >> shift) + shift * math.log(2.0)


@lru_cache(maxsize=1024)
def hypergeom_H(n: int) -> HypergeomValue:
    """
    H_n = 2F1(1, 1-n; 1/2-n; -1) = sum_{k=0}^{n-1} (1)_k (1-n)_k / ((1/2-n)_k k!) (-1)^k.

    The series terminates after n terms and is summed in exact rational arithmetic.
    """
    if n < 1:
        raise InputDomainError(f"n must be at least 1, got {n}")
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n - 1):
        # (1)_k / k! = 1, so consecutive terms differ by -(k+1-n) / (k+1/2-n)
        term = -term * (k + 1 - n) / (k + HALF - n)
        total += term
    return HypergeomValue(total)
