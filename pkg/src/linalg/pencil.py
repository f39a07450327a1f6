"""Singular directions of a symmetric pencil cos(t) Q1 + sin(t) Q2"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
from numpy.polynomial import chebyshev
from scipy.linalg import eigvals

from src.linalg.hermitian import HermitianMatrix
from src.models.settings import PencilMethod
from src.utils.config import get_settings
from src.utils.errors import DegeneratePencilError, UnsupportedBetaError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PencilRoots:
    """Singular angles in [0, 2pi), ascending, with merge diagnostics"""
    angles: np.ndarray
    merged: bool
    method: PencilMethod


def pencil_matrix(q1: HermitianMatrix, q2: HermitianMatrix, theta: float) -> np.ndarray:
    return math.cos(theta) * q1.entries + math.sin(theta) * q2.entries


def _qz_half_angles(q1: HermitianMatrix, q2: HermitianMatrix) -> List[float]:
    """Angles mod pi from the QZ eigenvalues of (Q1, -Q2)"""
    a, b = q1.entries, -q2.entries
    alpha, beta = eigvals(a, b, homogeneous_eigvals=True)
    scale = np.linalg.norm(a) + np.linalg.norm(b)
    if np.any(np.maximum(np.abs(alpha), np.abs(beta)) <= 1e-10 * scale):
        raise DegeneratePencilError(
            "pencil is singular for every angle",
            details={'beta': q1.beta, 'n': q1.n},
        )

    # (cos t, sin t) is proportional to (beta, alpha) for a real direction
    z = alpha * np.conj(beta)
    power = np.abs(alpha) ** 2 + np.abs(beta) ** 2
    real_tol = 0.0 if q1.beta == 1 else 1e-10
    real = np.abs(z.imag) <= real_tol * power
    half = 0.5 * np.arctan2(2.0 * z.real[real], (np.abs(beta) ** 2 - np.abs(alpha) ** 2)[real])
    return [float(t % math.pi) for t in half]


def _chebyshev_half_angles(q1: HermitianMatrix, q2: HermitianMatrix) -> List[float]:
    """Angles mod pi from interpolated det(Q1 + s Q2) and det(Q2 + u Q1) on [-1, 1]"""
    if q1.beta == 4:
        raise UnsupportedBetaError(4, (1, 2), "Chebyshev pencil roots")
    degree = q1.size
    nodes = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))
    angles: List[float] = []

    # charts s = tan t and u = cot t; their accepted ranges are disjoint up to the 1e-6 band
    for first, second, to_angle, reach in (
        (q1, q2, lambda s: math.atan(s), 1.0 + 1e-6),
        (q2, q1, lambda u: math.atan2(1.0, u), 1.0 - 1e-6),
    ):
        stack = first.entries[None, :, :] + nodes[:, None, None] * second.entries[None, :, :]
        sign, logdet = np.linalg.slogdet(stack)
        if np.all(sign == 0):
            raise DegeneratePencilError("pencil is singular at every interpolation node")
        finite = np.isfinite(logdet)
        top = np.max(logdet[finite])
        values = np.where(finite, np.real(sign) * np.exp(np.where(finite, logdet - top, 0.0)), 0.0)
        coefficients = chebyshev.chebfit(nodes, values, degree)
        if np.max(np.abs(coefficients)) == 0.0:
            raise DegeneratePencilError("interpolated determinant vanishes identically")
        for root in chebyshev.chebroots(coefficients):
            if abs(root.imag) <= 1e-8 and abs(root.real) < reach:
                angles.append(to_angle(float(root.real)) % math.pi)
    return angles


def _polish(q1: HermitianMatrix, q2: HermitianMatrix, theta: float, steps: int) -> float:
    """Newton on the eigenvalue of M(theta) closest to zero"""
    for _ in range(steps):
        w, v = np.linalg.eigh(pencil_matrix(q1, q2, theta))
        j = int(np.argmin(np.abs(w)))
        derivative = -math.sin(theta) * q1.entries + math.cos(theta) * q2.entries
        slope = float(np.real(np.vdot(v[:, j], derivative @ v[:, j])))
        if slope == 0.0:
            break
        step = w[j] / slope
        if not math.isfinite(step) or abs(step) > 0.1:
            break
        theta -= step
        if abs(step) <= 4.0 * np.finfo(float).eps:
            break
    return theta % math.pi


def _cluster(half_angles: List[float], tolerance: float):
    """Group sorted angles mod pi whose gaps are within tolerance (cyclically)"""
    if not half_angles:
        return []
    values = sorted(half_angles)
    groups = [[values[0]]]
    for t in values[1:]:
        if t - groups[-1][-1] <= tolerance:
            groups[-1].append(t)
        else:
            groups.append([t])
    if len(groups) > 1 and groups[0][0] + math.pi - groups[-1][-1] <= tolerance:
        groups[0] = [t - math.pi for t in groups.pop()] + groups[0]
    return groups


def solve_pencil(
    q1: HermitianMatrix,
    q2: HermitianMatrix,
    method: Optional[Union[str, PencilMethod]] = None,
    polish_steps: Optional[int] = None,
) -> PencilRoots:
    """
    All angles t in [0, 2pi) with det(cos t Q1 + sin t Q2) = 0.

    Args:
        q1, q2: Matrices of equal (beta, n)
        method: "qz" (generalized eigenvalues of the pencil) or "chebyshev"
            (interpolated determinant); defaults to the configured method
        polish_steps: Newton steps per root; defaults to the configured value

    Returns:
        PencilRoots with antipodally paired angles; `merged` flags roots that
        coincided within the merge tolerance
    """
    q1.require_compatible(q2)
    settings = get_settings().linalg
    method = PencilMethod(method or settings.pencil_method)
    steps = settings.pencil_polish_steps if polish_steps is None else polish_steps

    if method is PencilMethod.QZ:
        raw = _qz_half_angles(q1, q2)
        multiplicity = 2 if q1.beta == 4 else 1
    else:
        raw = _chebyshev_half_angles(q1, q2)
        multiplicity = 1

    if steps:
        raw = [_polish(q1, q2, t, steps) for t in raw]

    groups = _cluster(raw, settings.root_merge_tolerance)
    merged = any(len(g) > multiplicity for g in groups)
    if merged:
        logger.warning(
            f"Merged coincident pencil roots (n={q1.n}, beta={q1.beta})",
            extra={'group_sizes': [len(g) for g in groups]},
        )

    base = sorted(float(np.mean(g)) % math.pi for g in groups)
    angles = np.array(sorted(base + [t + math.pi for t in base]))
    return PencilRoots(angles=angles, merged=merged, method=method)


def pencil_real_roots(q1: HermitianMatrix, q2: HermitianMatrix, method=None) -> np.ndarray:
    """Ascending singular angles of the pencil in [0, 2pi)"""
    return solve_pencil(q1, q2, method).angles
