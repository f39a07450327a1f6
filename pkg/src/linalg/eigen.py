"""Symmetric eigensolver: Householder reduction plus implicit-shift QL"""

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from src.linalg.hermitian import HermitianMatrix
from src.linalg.spectrum import Spectrum
from src.models.settings import TridiagonalSolver
from src.utils.config import get_settings
from src.utils.errors import ConvergenceError, InputDomainError

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


def householder_tridiagonal(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reduce a real symmetric or complex Hermitian matrix to real tridiagonal form.

    Returns the diagonal d and the non-negative off-diagonal e (len(d) - 1).
    Complex off-diagonals are replaced by their moduli, which is a diagonal
    unitary similarity and leaves the eigenvalues unchanged.
    """
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    m = a.shape[0]
    d = np.empty(m)
    e = np.zeros(max(m - 1, 0))

    for k in range(m - 2):
        x = a[k + 1:, k]
        alpha = np.linalg.norm(x)
        d[k] = a[k, k].real
        if alpha == 0.0:
            continue

        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)

        # trailing block <- H A H with H = I - 2 v v^H, via w = A v
        block = a[k + 1:, k + 1:]
        w = block @ v
        kappa = np.vdot(v, w).real
        block -= 2.0 * np.outer(v, w.conj()) + 2.0 * np.outer(w, v.conj())
        block += 4.0 * kappa * np.outer(v, v.conj())
        e[k] = alpha

    if m >= 2:
        d[m - 2] = a[m - 2, m - 2].real
        d[m - 1] = a[m - 1, m - 1].real
        e[m - 2] = abs(a[m - 1, m - 2])
    elif m == 1:
        d[0] = a[0, 0].real
    return d, e


def tridiagonal_ql(d: np.ndarray, e: np.ndarray, max_iterations: int = 60) -> np.ndarray:
    """
    Eigenvalues of the symmetric tridiagonal matrix (d, e) by QL with implicit Wilkinson shifts.

    Raises:
        ConvergenceError: an eigenvalue needed more than `max_iterations` sweeps
    """
    n = len(d)
    d = [float(x) for x in d]
    e = [float(x) for x in e] + [0.0]

    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break

            iterations += 1
            if iterations > max_iterations:
                raise ConvergenceError(
                    f"QL iteration did not converge for eigenvalue {l}",
                    details={'iterations': max_iterations},
                )

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    return np.sort(np.array(d))


def collapse_kramers_pairs(values: np.ndarray, tolerance: Optional[float] = None) -> np.ndarray:
    """
    Collapse the doubled spectrum of a beta=4 embedding.

    Works on the last axis, so batches of sorted spectra are accepted.
    """
    if tolerance is None:
        tolerance = get_settings().linalg.kramers_tolerance
    values = np.asarray(values, dtype=float)
    if values.shape[-1] % 2:
        raise InputDomainError("embedding spectrum must have even length")
    pairs = values.reshape(values.shape[:-1] + (values.shape[-1] // 2, 2))
    scale = np.maximum(1.0, np.max(np.abs(values), axis=-1, keepdims=True))
    gap = np.abs(pairs[..., 0] - pairs[..., 1])
    if np.any(gap > tolerance * scale):
        raise InputDomainError(
            "embedding eigenvalues do not pair up; matrix is not quaternionic",
            details={'max_gap': float(np.max(gap))},
        )
    return pairs.mean(axis=-1)


def batch_eigenvalues(entries: np.ndarray, beta: int) -> np.ndarray:
    """Sorted eigenvalues of a stack (count, m, m) of self-adjoint arrays, Kramers-collapsed for beta=4"""
    values = np.linalg.eigvalsh(entries)
    if beta == 4:
        values = collapse_kramers_pairs(values)
    return values


def eigenvalues(q: HermitianMatrix, solver: Optional[Union[str, TridiagonalSolver]] = None) -> Spectrum:
    """
    All eigenvalues of Q in ascending order.

    Args:
        q: Matrix to decompose
        solver: "ql" (implicit-shift QL) or "lapack" (scipy's tridiagonal driver).
            Defaults to the configured solver.

    Returns:
        Spectrum with n values (collapsed Kramers pairs for beta=4)
    """
    settings = get_settings().linalg
    solver = TridiagonalSolver(solver or settings.tridiagonal_solver)
    if not np.all(np.isfinite(q.entries)):
        raise InputDomainError("matrix has non-finite entries")

    d, e = householder_tridiagonal(q.entries)
    if solver is TridiagonalSolver.QL:
        values = tridiagonal_ql(d, e, settings.ql_max_iterations)
    elif len(d) == 1:
        values = d.copy()
    else:
        values = eigvalsh_tridiagonal(d, e)

    if q.beta == 4:
        values = collapse_kramers_pairs(values, settings.kramers_tolerance)
    return Spectrum(np.asarray(values), q.beta, q.n)
