"""Samplers for G(beta, n) calibrated to the eigenvalue density exp(-beta/2 sum lambda^2) |Delta|^beta"""

import logging
import math

import numpy as np

from src.linalg.eigen import batch_eigenvalues
from src.linalg.hermitian import HermitianMatrix
from src.linalg.spectrum import Spectrum
from src.models.ensemble import EnsembleSpec
from src.ensembles.rng import as_generator

logger = logging.getLogger(__name__)


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_matrices(spec: EnsembleSpec, stream, count: int) -> np.ndarray:
    """
    Draw `count` matrices of G(beta, n) as a stacked array.

    Q = (G + G^H) / (2 sqrt(beta)) with G standard real (beta=1) or complex
    Gaussian: diagonal entries are N(0, 1/beta) and every real component of an
    off-diagonal entry is N(0, 1/(2 beta)). For beta=4 the quaternion part B is
    (H - H^T) / (2 sqrt(beta)) and the stack holds 2n x 2n embeddings.

    Returns:
        Array of shape (count, n, n), or (count, 2n, 2n) for beta=4
    """
    beta = spec.tier
    n = spec.n
    rng = as_generator(stream)
    scale = 1.0 / (2.0 * math.sqrt(beta))

    if beta == 1:
        g = rng.standard_normal((count, n, n))
        return (g + g.transpose(0, 2, 1)) * scale

    g = _complex_normal(rng, (count, n, n))
    a = (g + g.conj().transpose(0, 2, 1)) * scale
    if beta == 2:
        return a

    h = _complex_normal(rng, (count, n, n))
    b = (h - h.transpose(0, 2, 1)) * scale
    top = np.concatenate([a, b], axis=2)
    bottom = np.concatenate([-b.conj(), a.conj()], axis=2)
    return np.concatenate([top, bottom], axis=1)


def sample_matrix(spec: EnsembleSpec, stream) -> HermitianMatrix:
    """One matrix of G(beta, n), beta in {1, 2, 4}"""
    entries = sample_matrices(spec, stream, 1)[0]
    return HermitianMatrix(spec.tier, spec.n, np.array(entries))


def tridiagonal_bands(spec: EnsembleSpec, stream, count: int):
    """
    Diagonal and off-diagonal bands of the Hermite beta-ensemble tridiagonal model.

    Diagonal N(0, 1/beta); the i-th off-diagonal is chi with (n - i) beta degrees
    of freedom, divided by sqrt(2 beta). Any beta > 0 is allowed.
    """
    rng = as_generator(stream)
    n = spec.n
    beta = spec.beta
    diag = rng.standard_normal((count, n)) / math.sqrt(beta)
    dof = beta * np.arange(n - 1, 0, -1, dtype=float)
    off = np.sqrt(rng.chisquare(dof, size=(count, n - 1))) / math.sqrt(2.0 * beta)
    return diag, off


def sample_spectra(spec: EnsembleSpec, stream, count: int, method: str = "matrix") -> np.ndarray:
    """
    Sorted eigenvalues of `count` draws, shape (count, n).

    Args:
        method: "matrix" (dense sampler, beta in {1, 2, 4}) or "tridiagonal" (any beta > 0)
    """
    if method == "matrix":
        return batch_eigenvalues(sample_matrices(spec, stream, count), spec.tier)
    if method == "tridiagonal":
        diag, off = tridiagonal_bands(spec, stream, count)
        n = spec.n
        t = np.zeros((count, n, n))
        idx = np.arange(n)
        t[:, idx, idx] = diag
        t[:, idx[:-1], idx[1:]] = off
        t[:, idx[1:], idx[:-1]] = off
        return np.linalg.eigvalsh(t)
    raise ValueError(f"unknown sampling method {method!r}")


def sample_spectrum_tridiagonal(spec: EnsembleSpec, stream) -> Spectrum:
    """Spectrum of one tridiagonal draw; the joint law matches G(beta, n) for any beta > 0"""
    values = sample_spectra(spec, stream, 1, method="tridiagonal")[0]
    return Spectrum(values, spec.beta, spec.n)
