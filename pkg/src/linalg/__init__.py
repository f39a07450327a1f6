"""Self-adjoint matrices, spectra, nearest singular matrices and pencils"""

from .hermitian import HermitianMatrix, SCALAR_TIERS, symplectic_form
from .spectrum import Spectrum, index_plus, least_singular
from .eigen import (
    batch_eigenvalues,
    collapse_kramers_pairs,
    eigenvalues,
    householder_tridiagonal,
    tridiagonal_ql,
)
from .nearest import NearestSingular, eckart_young
from .pencil import PencilRoots, pencil_matrix, pencil_real_roots, solve_pencil

__all__ = [
    "HermitianMatrix",
    "SCALAR_TIERS",
    "symplectic_form",
    "Spectrum",
    "index_plus",
    "least_singular",
    "batch_eigenvalues",
    "collapse_kramers_pairs",
    "eigenvalues",
    "householder_tridiagonal",
    "tridiagonal_ql",
    "NearestSingular",
    "eckart_young",
    "PencilRoots",
    "pencil_matrix",
    "pencil_real_roots",
    "solve_pencil",
]
