"""Maximum of the positive index over the unit sphere of a span of quadrics"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.linalg.hermitian import HermitianMatrix
from src.quadrics.arcs import pencil_arcs, positive_index
from src.utils.config import get_settings
from src.utils.errors import InputDomainError

logger = logging.getLogger(__name__)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class IndexExtremum:
    """mu = max i+ over the sphere, nu = n - mu, and a direction attaining mu"""
    mu: int
    nu: int
    direction: np.ndarray
    grid_mu: int


def fibonacci_sphere(count: int) -> np.ndarray:
    """`count` nearly uniform points on S^2"""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(1.0 - z * z)
    phi = GOLDEN_ANGLE * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def hyperspherical_grid(k: int, per_axis: int) -> np.ndarray:
    """Product grid of spherical coordinates on S^(k-1): k - 2 polar angles and one azimuth"""
    polar = [np.linspace(0.0, math.pi, per_axis)] * (k - 2)
    azimuth = 2.0 * math.pi * np.arange(per_axis) / per_axis
    grids = np.meshgrid(*polar, azimuth, indexing='ij')
    angles = np.stack([g.ravel() for g in grids], axis=1)

    points = np.ones((len(angles), k))
    for a in range(k - 1):
        points[:, a] *= np.cos(angles[:, a])
        points[:, a + 1:] *= np.sin(angles[:, a])[:, None]
    return points


def sphere_grid(k: int, grid_per_axis: int) -> np.ndarray:
    """About grid_per_axis^2 directions on S^(k-1), the coordinate axes included"""
    total = grid_per_axis ** 2
    if k == 3:
        points = fibonacci_sphere(total)
    else:
        per_axis = max(2, int(round(total ** (1.0 / (k - 1)))))
        points = hyperspherical_grid(k, per_axis)
    axes = np.concatenate([np.eye(k), -np.eye(k)])
    return np.concatenate([axes, points])


def _tangent_basis(w: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the tangent space at w, as rows"""
    q, _ = np.linalg.qr(np.column_stack([w, np.eye(len(w))]))
    return q[:, 1:len(w)].T


def mu_max_sphere(
    matrices: Sequence[HermitianMatrix],
    grid_per_axis: Optional[int] = None,
    refine_steps: Optional[int] = None,
) -> IndexExtremum:
    """
    mu = max over unit w of i+(sum_i w_i Q_i).

    Two matrices are handled exactly through the pencil arcs. For k >= 3 the
    grid maximum is a certified lower bound; a hill climb along the tangent
    directions of the best grid point, halving its step whenever no neighbour
    improves, may raise it.
    """
    k = len(matrices)
    if k < 2:
        raise InputDomainError(f"need at least two quadrics, got {k}")
    for q in matrices[1:]:
        matrices[0].require_compatible(q)
    n = matrices[0].n

    if k == 2:
        arcs = pencil_arcs(matrices[0], matrices[1])
        best = int(np.argmax(arcs.arc_index))
        theta = arcs.arc_midpoints()[best]
        return IndexExtremum(arcs.mu, n - arcs.mu, np.array([math.cos(theta), math.sin(theta)]), arcs.mu)

    settings = get_settings().quadrics
    grid_per_axis = grid_per_axis or settings.grid_per_axis
    refine_steps = settings.refine_steps if refine_steps is None else refine_steps

    grid = sphere_grid(k, grid_per_axis)
    index = positive_index(matrices, grid)
    best = int(np.argmax(index))
    grid_mu = int(index[best])
    w, mu = grid[best], grid_mu

    step = math.pi / grid_per_axis
    for _ in range(refine_steps):
        if mu == n:
            break
        tangent = _tangent_basis(w)
        candidates = np.concatenate([w + step * tangent, w - step * tangent])
        candidates /= np.linalg.norm(candidates, axis=1, keepdims=True)
        values = positive_index(matrices, candidates)
        top = int(np.argmax(values))
        if values[top] > mu:
            w, mu = candidates[top], int(values[top])
        else:
            step *= 0.5

    if mu > grid_mu:
        logger.debug(f"refinement raised mu from {grid_mu} to {mu}")
    return IndexExtremum(mu, n - mu, w, grid_mu)
