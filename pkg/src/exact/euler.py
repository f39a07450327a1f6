"""Expected Euler characteristic of an intersection of k random quadrics"""

from fractions import Fraction
import math

from src.utils.errors import InputDomainError


def _binomial(a: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out = out * (a - i) / (i + 1)
    return out


def euler_char_expectation(k: int, n: int) -> float:
    """
    a_0 + a_2 + ... + a_dim where sum a_{2j} t^{2j} = (2 / (1 + t^2))^{k/2}.

    dim = n - 1 - k is the dimension of the intersection in RP^(n-1) and must
    be even and non-negative.
    """
    if k < 1:
        raise InputDomainError(f"k must be at least 1, got {k}")
    dim = n - 1 - k
    if dim < 0 or dim % 2:
        raise InputDomainError(
            f"expected Euler characteristic needs an even, non-negative dimension; got {dim}",
            details={'k': k, 'n': n},
        )
    exponent = Fraction(-k, 2)
    series = sum((_binomial(exponent, j) for j in range(dim // 2 + 1)), Fraction(0))
    if k % 2 == 0:
        return float(2 ** (k // 2) * series)
    return math.sqrt(2.0 ** k) * float(series)
