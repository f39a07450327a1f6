"""Spectra and the statistics read off them"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.utils.config import get_settings
from src.utils.errors import InputDomainError


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues of a matrix in G(beta, n).

    For beta=4 these are the n values left after collapsing Kramers pairs.
    """

    eigenvalues: np.ndarray
    beta: int
    n: int

    def __post_init__(self):
        values = np.asarray(self.eigenvalues, dtype=float)
        if values.shape != (self.n,):
            raise InputDomainError(f"spectrum of size n={self.n} has {values.size} values")
        if self.n > 1 and np.any(np.diff(values) < 0):
            raise InputDomainError("eigenvalues must be non-decreasing")
        values.setflags(write=False)
        object.__setattr__(self, 'eigenvalues', values)

    @property
    def frobenius_norm(self) -> float:
        return math.sqrt(math.fsum(float(x) ** 2 for x in self.eigenvalues))

    def zero_threshold(self, rel: Optional[float] = None) -> float:
        """|lambda| at or below this counts as zero"""
        if rel is None:
            rel = get_settings().linalg.zero_threshold
        return rel * max(1.0, self.frobenius_norm)

    def index_plus(self) -> int:
        return int(np.count_nonzero(self.eigenvalues > self.zero_threshold()))

    def index_minus(self) -> int:
        return int(np.count_nonzero(self.eigenvalues < -self.zero_threshold()))

    def least_singular(self) -> float:
        return float(np.min(np.abs(self.eigenvalues)))

    def is_singular(self) -> bool:
        return self.least_singular() <= self.zero_threshold()

    def log_abs_det(self) -> float:
        """log |det Q| over G(beta, n); -inf when an eigenvalue is exactly zero"""
        with np.errstate(divide='ignore'):
            return math.fsum(np.log(np.abs(self.eigenvalues)).tolist())

    def abs_det(self) -> float:
        return float(np.prod(np.abs(self.eigenvalues)))


def index_plus(s: Spectrum) -> int:
    """Number of eigenvalues strictly above the zero threshold"""
    return s.index_plus()


def least_singular(s: Spectrum) -> float:
    """sigma(Q) = min |lambda_i|"""
    return s.least_singular()
