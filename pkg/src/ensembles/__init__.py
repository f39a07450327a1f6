"""Samplers and density of the Gaussian beta-ensembles"""

from .rng import RngStream, as_generator
from .samplers import (
    sample_matrices,
    sample_matrix,
    sample_spectra,
    sample_spectrum_tridiagonal,
    tridiagonal_bands,
)
from .density import log_joint_density

__all__ = [
    "RngStream",
    "as_generator",
    "sample_matrices",
    "sample_matrix",
    "sample_spectra",
    "sample_spectrum_tridiagonal",
    "tridiagonal_bands",
    "log_joint_density",
]
