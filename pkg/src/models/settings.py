"""Configuration models mirroring config/defaults.yaml"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class TridiagonalSolver(str, Enum):
    """Back end for the tridiagonal eigenvalue stage"""
    QL = "ql"
    LAPACK = "lapack"


class PencilMethod(str, Enum):
    """Root finder for det(cos t Q1 + sin t Q2) = 0"""
    QZ = "qz"
    CHEBYSHEV = "chebyshev"


class LinalgSettings(BaseModel):
    zero_threshold: float = Field(default=1e-12, gt=0.0)
    kramers_tolerance: float = Field(default=1e-9, gt=0.0)
    tridiagonal_solver: TridiagonalSolver = TridiagonalSolver.QL
    ql_max_iterations: int = Field(default=60, ge=1)
    pencil_method: PencilMethod = PencilMethod.QZ
    pencil_polish_steps: int = Field(default=3, ge=0)
    root_merge_tolerance: float = Field(default=1e-8, gt=0.0)


class MonteCarloSettings(BaseModel):
    block_size: int = Field(default=4096, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)
    grid_signal: float = Field(default=10.0, gt=0.0)


class QuadratureSettings(BaseModel):
    cutoff: float = Field(default=10.0, gt=0.0)
    panels: int = Field(default=8, ge=1)
    nodes: int = Field(default=16, ge=2)
    max_dimension: int = Field(default=3, ge=1)


class DetCurveSettings(BaseModel):
    panels: int = Field(default=4096, ge=1)
    gauss_nodes: int = Field(default=16, ge=2)
    rtol: float = Field(default=1e-10, gt=0.0)
    stall_rtol: float = Field(default=1e-6, gt=0.0)
    max_refinements: int = Field(default=12, ge=0)
    scan_points: int = Field(default=4096, ge=8)
    bisection_steps: int = Field(default=60, ge=1)


class QuadricsSettings(BaseModel):
    grid_per_axis: int = Field(default=100, ge=2)
    refine_steps: int = Field(default=20, ge=0)
    mc_grid_per_axis: int = Field(default=24, ge=2)
    mc_refine_steps: int = Field(default=8, ge=0)


class CacheSettings(BaseModel):
    enabled: bool = True
    directory: str = ".cache/betagap"


class LoggingSettings(BaseModel):
    level: str = "INFO"
    format: str = "text"


class Settings(BaseModel):
    """All tunable numerical policy of the lab"""

    linalg: LinalgSettings = Field(default_factory=LinalgSettings)
    montecarlo: MonteCarloSettings = Field(default_factory=MonteCarloSettings)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    detcurve: DetCurveSettings = Field(default_factory=DetCurveSettings)
    quadrics: QuadricsSettings = Field(default_factory=QuadricsSettings)
    cache: CacheSettings = Field(default_factory=CacheSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)