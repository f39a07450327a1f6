"""Joint eigenvalue density of G(beta, n)"""

from typing import Union

import numpy as np

from src.exact.constants import log_norm_constant
from src.utils.errors import InputDomainError


def log_joint_density(beta: float, lambdas) -> Union[float, np.ndarray]:
    """
    log F(beta, n)(lambda) = log C - beta/2 sum lambda_j^2 + beta sum_{j<k} log|lambda_k - lambda_j|.

    Accepts one point (shape (n,)) or a batch (shape (..., n)). Coinciding
    eigenvalues give -inf rather than an error.
    """
    if beta <= 0:
        raise InputDomainError(f"beta must be positive, got {beta}")
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim == 0:
        lam = lam.reshape(1)
    if not np.all(np.isfinite(lam)):
        raise InputDomainError("eigenvalues must be finite")

    n = lam.shape[-1]
    log_c = log_norm_constant(beta, n).log_abs
    upper, lower = np.triu_indices(n, 1)
    with np.errstate(divide='ignore'):
        vandermonde = np.sum(np.log(np.abs(lam[..., lower] - lam[..., upper])), axis=-1)
    out = log_c - 0.5 * beta * np.sum(lam ** 2, axis=-1) + beta * vandermonde
    return float(out) if lam.ndim == 1 else out
