"""Nearest singular matrix in Frobenius norm"""

import math
from typing import NamedTuple

import numpy as np

from src.linalg.hermitian import HermitianMatrix
from src.utils.config import get_settings
from src.utils.errors import DegenerateInputError, InputDomainError


class NearestSingular(NamedTuple):
    distance: float
    nearest: HermitianMatrix


def eckart_young(q: HermitianMatrix, corank: int = 1) -> NearestSingular:
    """
    Closest matrix of corank >= `corank` to Q, and its distance.

    The eigenvalues of smallest modulus are set to zero in Q's own eigenbasis
    (both Kramers copies for beta=4). With corank=1 the distance is sigma(Q).

    Raises:
        DegenerateInputError: Q is already singular (distance 0, nearest Q)
        InputDomainError: corank outside [1, n]
    """
    if not 1 <= corank <= q.n:
        raise InputDomainError(f"corank must lie in [1, {q.n}], got {corank}")

    multiplicity = 2 if q.beta == 4 else 1
    w, vecs = np.linalg.eigh(q.entries)
    order = np.argsort(np.abs(w), kind='stable')

    norm = math.sqrt(math.fsum((w ** 2).tolist()) / multiplicity)
    threshold = get_settings().linalg.zero_threshold * max(1.0, norm)
    if abs(w[order[0]]) <= threshold:
        raise DegenerateInputError(
            "matrix is already singular", distance=0.0, nearest=q,
            details={'least_singular': float(abs(w[order[0]]))},
        )

    dropped = order[:multiplicity * corank]
    kept = w.copy()
    kept[dropped] = 0.0
    nearest = HermitianMatrix.from_upper((vecs * kept) @ vecs.conj().T, q.beta)
    distance = math.sqrt(math.fsum((w[dropped] ** 2).tolist()) / multiplicity)
    return NearestSingular(distance, nearest)
