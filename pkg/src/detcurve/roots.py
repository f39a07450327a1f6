"""Real zeros of t -> det(sum_i f_i(t) A_i)"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import eigvals

from src.detcurve.basis import CurveBasis, DomainKind, PolynomialBasis
from src.linalg.eigen import batch_eigenvalues
from src.linalg.hermitian import HermitianMatrix
from src.utils.config import get_settings
from src.utils.errors import ConvergenceError, DegeneratePencilError, InputDomainError

logger = logging.getLogger(__name__)

_CHUNK = 1024


class RootMethod(str, Enum):
    COMPANION = "companion"  # linearized matrix polynomial, polynomial bases only
    SCAN = "scan"  # sign of det along a grid plus bisection


@dataclass(frozen=True)
class RootScan:
    """Real roots in ascending order; `tangencies` counts even-multiplicity touches seen by the scan"""
    roots: np.ndarray
    tangencies: int
    method: RootMethod

    @property
    def count(self) -> int:
        return int(len(self.roots))


def _check_matrices(basis: CurveBasis, matrices: Sequence[HermitianMatrix]) -> List[np.ndarray]:
    if len(matrices) != basis.k + 1:
        raise InputDomainError(f"basis has {basis.k + 1} functions but {len(matrices)} matrices were given")
    for q in matrices[1:]:
        matrices[0].require_compatible(q)
    return [q.entries for q in matrices]


# -- companion linearization ---------------------------------------------------

def _companion_roots(basis: PolynomialBasis, arrays: List[np.ndarray], beta: int) -> np.ndarray:
    blocks = basis.homogeneous_coefficients(arrays)
    if not any(np.any(b) for b in blocks):
        raise DegeneratePencilError("all coefficient matrices vanish")
    while len(blocks) > 1 and not np.any(blocks[-1]):
        blocks.pop()
    d = len(blocks) - 1
    m = blocks[0].shape[0]
    if d == 0:
        if np.linalg.matrix_rank(blocks[0]) < m:
            raise DegeneratePencilError("constant combination is singular")
        return np.empty(0)

    dtype = complex if any(np.iscomplexobj(b) for b in blocks) else float
    size = m * d
    c = np.zeros((size, size), dtype=dtype)
    e = np.eye(size, dtype=dtype)
    c[:size - m, m:] = np.eye(size - m)
    for p in range(d):
        c[size - m:, p * m:(p + 1) * m] = -blocks[p]
    e[size - m:, size - m:] = blocks[d]

    alpha, beta_h = eigvals(c, e, homogeneous_eigvals=True)
    scale = np.linalg.norm(c) + np.linalg.norm(e)
    if np.any(np.maximum(np.abs(alpha), np.abs(beta_h)) <= 1e-10 * scale):
        raise DegeneratePencilError("matrix polynomial is singular for every t")

    finite = np.abs(beta_h) > 1e-13 * np.abs(alpha)
    lam = alpha[finite] / beta_h[finite]
    if beta == 1:
        real = lam.imag == 0
    else:
        tol = 1e-7 if beta == 4 else 1e-9
        real = np.abs(lam.imag) <= tol * np.maximum(1.0, np.abs(lam))
    roots = np.sort(lam[real].real)

    if beta == 4:
        # every root of the embedding is a Kramers pair
        if len(roots) % 2:
            raise ConvergenceError("unpaired real root of a quaternionic matrix polynomial")
        roots = roots.reshape(-1, 2).mean(axis=1)
    if basis.domain.kind is DomainKind.INTERVAL:
        roots = roots[(roots >= basis.domain.lower) & (roots <= basis.domain.upper)]
    return roots


# -- sign scan -----------------------------------------------------------------

class _Scanner:
    """Evaluates the combination at compact parameters u"""

    def __init__(self, basis: CurveBasis, arrays: List[np.ndarray], beta: int):
        self.basis = basis
        self.beta = beta
        self.homogeneous = isinstance(basis, PolynomialBasis) and basis.domain.kind is DomainKind.LINE
        if self.homogeneous:
            self.stack = np.stack(basis.homogeneous_coefficients(arrays))
        else:
            self.stack = np.stack(arrays)

    def grid(self, points: int) -> Tuple[np.ndarray, bool]:
        """Grid in u and whether its ends wrap around"""
        kind = self.basis.domain.kind
        lower, upper = self.basis.domain.parameter_range
        if kind is DomainKind.CIRCLE:
            return lower + (upper - lower) * np.arange(points) / points, True
        if kind is DomainKind.LINE and not self.homogeneous:
            h = (upper - lower) / points
            return lower + h * (np.arange(points) + 0.5), False
        return np.linspace(lower, upper, points), False

    def to_t(self, u: np.ndarray) -> np.ndarray:
        if self.basis.domain.kind is DomainKind.LINE:
            return np.tan(u)
        return u

    def matrices(self, u: np.ndarray) -> np.ndarray:
        if self.homogeneous:
            p = np.arange(self.stack.shape[0])
            d = p[-1]
            coeffs = np.sin(u)[:, None] ** p[None, :] * np.cos(u)[:, None] ** (d - p)[None, :]
        else:
            coeffs, _ = self.basis.evaluate(self.to_t(u))
        return np.einsum('gp,pij->gij', coeffs, self.stack)

    def spectra(self, u: np.ndarray) -> np.ndarray:
        out = []
        for start in range(0, len(u), _CHUNK):
            out.append(batch_eigenvalues(self.matrices(u[start:start + _CHUNK]), self.beta))
        return np.concatenate(out, axis=0)

    def parity(self, u: float) -> int:
        values = self.spectra(np.array([u]))[0]
        return int(np.count_nonzero(values < 0) % 2)

    def smallest(self, u: float) -> float:
        return float(np.min(np.abs(self.spectra(np.array([u]))[0])))


def _bisect(scanner: _Scanner, lo: float, hi: float, parity_lo: int, steps: int) -> float:
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if scanner.parity(mid) == parity_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _touches_zero(scanner: _Scanner, lo: float, hi: float, steps: int, threshold: float) -> bool:
    """Ternary search of min |lambda| on [lo, hi]"""
    for _ in range(steps):
        a = lo + (hi - lo) / 3.0
        b = hi - (hi - lo) / 3.0
        if scanner.smallest(a) <= scanner.smallest(b):
            hi = b
        else:
            lo = a
    return scanner.smallest(0.5 * (lo + hi)) <= threshold


def _scan_roots(basis: CurveBasis, arrays: List[np.ndarray], beta: int) -> Tuple[np.ndarray, int]:
    settings = get_settings().detcurve
    scanner = _Scanner(basis, arrays, beta)
    u, periodic = scanner.grid(settings.scan_points)
    spectra = scanner.spectra(u)
    parity = np.count_nonzero(spectra < 0, axis=1) % 2
    smallest = np.min(np.abs(spectra), axis=1)
    scale = float(np.max(np.abs(spectra)))
    if scale == 0.0 or np.all(smallest <= 1e-12 * scale):
        raise DegeneratePencilError("combination is singular along the whole curve")

    right = np.roll(np.arange(len(u)), -1) if periodic else np.arange(1, len(u))
    left = np.arange(len(right))
    period = (u[-1] - u[0]) + (u[1] - u[0]) if periodic else 0.0

    roots = []
    for i, j in zip(left, right):
        if parity[i] != parity[j]:
            hi = u[j] + period if j < i else u[j]
            roots.append(_bisect(scanner, u[i], hi, int(parity[i]), settings.bisection_steps))

    tangencies = 0
    for i in range(len(u)):
        if not periodic and (i == 0 or i == len(u) - 1):
            continue
        a, b = (i - 1) % len(u), (i + 1) % len(u)
        if (
            smallest[i] <= 1e-2 * scale
            and smallest[i] < smallest[a]
            and smallest[i] <= smallest[b]
            and parity[a] == parity[i] == parity[b]
        ):
            lo = u[a] - period if a > i else u[a]
            hi = u[b] + period if b < i else u[b]
            if _touches_zero(scanner, lo, hi, settings.bisection_steps, 1e-8 * scale):
                tangencies += 1
    if tangencies:
        logger.warning(f"sign scan passed {tangencies} even-multiplicity tangencies", extra={'n': arrays[0].shape[0]})

    t = scanner.to_t(np.array(roots, dtype=float))
    if periodic:
        lower, upper = basis.domain.parameter_range
        t = lower + np.mod(t - lower, upper - lower)
    return np.sort(t), tangencies


def find_roots(
    basis: CurveBasis,
    matrices: Sequence[HermitianMatrix],
    method: Optional[Union[str, RootMethod]] = None,
) -> RootScan:
    """
    Real t in the basis domain where sum_i f_i(t) A_i is singular.

    Args:
        basis: Curve of coefficient functions
        matrices: k + 1 matrices sharing (beta, n)
        method: "companion" (polynomial bases; the default there) or "scan"
            (any basis; the default otherwise). The scan sees odd-multiplicity
            roots only and reports even-multiplicity touches as tangencies.

    Raises:
        DegeneratePencilError: the combination is singular for every t
    """
    arrays = _check_matrices(basis, matrices)
    beta = matrices[0].beta
    if method is None:
        method = RootMethod.COMPANION if basis.is_polynomial else RootMethod.SCAN
    method = RootMethod(method)

    if method is RootMethod.COMPANION:
        if not basis.is_polynomial:
            raise InputDomainError("companion linearization needs a polynomial basis")
        return RootScan(_companion_roots(basis, arrays, beta), 0, method)
    roots, tangencies = _scan_roots(basis, arrays, beta)
    return RootScan(roots, tangencies, method)


def count_roots(
    basis: CurveBasis,
    matrices: Sequence[HermitianMatrix],
    method: Optional[Union[str, RootMethod]] = None,
) -> int:
    """Number of real roots of det(sum_i f_i(t) A_i) in the basis domain"""
    return find_roots(basis, matrices, method).count
