"""Utility modules"""

from .cache import EstimateCache, get_cache
from .config import get_settings, load_settings
from .errors import (
    BetaGapError,
    ConvergenceError,
    DegenerateInputError,
    DegeneratePencilError,
    InputDomainError,
    OutputError,
    UnsupportedBetaError,
    UsageError,
)
from .metrics import RunMetrics, get_metrics_tracker

__all__ = [
    "EstimateCache",
    "get_cache",
    "get_settings",
    "load_settings",
    "BetaGapError",
    "ConvergenceError",
    "DegenerateInputError",
    "DegeneratePencilError",
    "InputDomainError",
    "OutputError",
    "UnsupportedBetaError",
    "UsageError",
    "RunMetrics",
    "get_metrics_tracker",
]
