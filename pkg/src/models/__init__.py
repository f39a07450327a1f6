"""Data models for betagap runs"""

from .ensemble import EnsembleSpec, MATRIX_BETAS
from .estimate import Estimate
from .run_record import RunRecord
from .settings import Settings, PencilMethod, TridiagonalSolver

__all__ = [
    "EnsembleSpec",
    "MATRIX_BETAS",
    "Estimate",
    "RunRecord",
    "Settings",
    "PencilMethod",
    "TridiagonalSolver",
]
