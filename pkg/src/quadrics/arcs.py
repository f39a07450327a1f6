"""The index function on the circle of a pencil of quadrics"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.linalg.eigen import batch_eigenvalues
from src.linalg.hermitian import HermitianMatrix
from src.linalg.pencil import solve_pencil
from src.utils.config import get_settings

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def positive_index(q_list, directions: np.ndarray) -> np.ndarray:
    """
    i+(sum_i w_i Q_i) for every row w of `directions`.

    Eigenvalues at or below the configured relative zero threshold do not count.
    """
    stack = np.stack([q.entries for q in q_list])
    beta = q_list[0].beta
    rel = get_settings().linalg.zero_threshold
    out = np.empty(len(directions), dtype=np.int64)
    for start in range(0, len(directions), 256):
        w = directions[start:start + 256]
        combos = np.einsum('gi,ijk->gjk', w, stack)
        values = batch_eigenvalues(combos, beta)
        norm = np.sqrt(np.sum(values ** 2, axis=1))
        threshold = rel * np.maximum(1.0, norm)
        out[start:start + 256] = np.count_nonzero(values > threshold[:, None], axis=1)
    return out


@dataclass(frozen=True)
class PencilArcs:
    """
    Singular angles of cos(t) Q1 + sin(t) Q2 and the index on the arcs between them.

    Arc a runs from singular_angles[a] to singular_angles[a + 1], the last one
    wrapping around through 2pi. Without singular angles there is a single arc
    covering the circle.
    """

    n: int
    singular_angles: np.ndarray
    arc_index: np.ndarray
    merged: bool = False

    @property
    def card(self) -> int:
        """Number of singular angles on the circle"""
        return int(len(self.singular_angles))

    @property
    def mu(self) -> int:
        return int(np.max(self.arc_index))

    @property
    def nu(self) -> int:
        return int(np.min(self.arc_index))

    def antipode(self, arc: int) -> int:
        return (arc + len(self.arc_index) // 2) % len(self.arc_index)

    def arc_midpoints(self) -> np.ndarray:
        angles = self.singular_angles
        if len(angles) == 0:
            return np.array([0.0])
        upper = np.append(angles[1:], angles[0] + TWO_PI)
        return 0.5 * (angles + upper) % TWO_PI

    def components(self, level: int) -> int:
        """b0 of {t : index(t) >= level}, as the number of maximal cyclic runs of arcs"""
        inside = self.arc_index >= level
        if not np.any(inside):
            return 0
        if np.all(inside):
            return 1
        # a run starts wherever an inside arc follows an outside one
        return int(np.count_nonzero(inside & ~np.roll(inside, 1)))

    def is_proper(self, level: int) -> bool:
        inside = self.arc_index >= level
        return bool(np.any(inside) and not np.all(inside))


def pencil_arcs(
    q1: HermitianMatrix,
    q2: HermitianMatrix,
    method=None,
    polish_steps: Optional[int] = None,
) -> PencilArcs:
    """
    Singular angles and arc indices of the pencil spanned by Q1 and Q2.

    Raises:
        DegeneratePencilError: the pencil is singular at every angle
    """
    roots = solve_pencil(q1, q2, method, polish_steps)
    arcs = PencilArcs(q1.n, roots.angles, np.empty(0, dtype=np.int64), roots.merged)
    midpoints = arcs.arc_midpoints()
    directions = np.stack([np.cos(midpoints), np.sin(midpoints)], axis=1)
    index = positive_index([q1, q2], directions)
    return PencilArcs(q1.n, roots.angles, index, roots.merged)


def index_profile(q1: HermitianMatrix, q2: HermitianMatrix, points: int = 720) -> Tuple[np.ndarray, np.ndarray]:
    """Angles on a uniform grid of [0, 2pi) and i+ of the pencil at each of them"""
    q1.require_compatible(q2)
    angles = TWO_PI * np.arange(points) / points
    directions = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return angles, positive_index([q1, q2], directions)


def example_pencil() -> Tuple[HermitianMatrix, HermitianMatrix]:
    """
    Q1 = I_3 and Q2 = [[0, 1, 1], [1, 1, 1], [1, 1, 0]].

    The two conics have no common real point in RP^2; the index runs through
    3, 2, 1, 0, 1, 2 around the circle and every entry of the table is zero.
    """
    q1 = HermitianMatrix.identity(3)
    q2 = HermitianMatrix.from_upper([[0.0, 1.0, 1.0], [1.0, 1.0, 1.0], [1.0, 1.0, 0.0]])
    return q1, q2
