"""Ensemble specification model"""

from pydantic import BaseModel, Field

from src.utils.errors import UnsupportedBetaError

MATRIX_BETAS = (1, 2, 4)


class EnsembleSpec(BaseModel):
    """A Gaussian beta-ensemble G(beta, n) together with the master seed of a run"""

    beta: float = Field(gt=0.0)
    n: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)

    class Config:
        frozen = True

    @property
    def is_matrix_tier(self) -> bool:
        """True for the real, complex and quaternion tiers"""
        return self.beta in MATRIX_BETAS

    @property
    def tier(self) -> int:
        """Integer scalar-tier tag; raises for betas without a matrix model"""
        if not self.is_matrix_tier:
            raise UnsupportedBetaError(self.beta, MATRIX_BETAS, "matrix sampling")
        return int(self.beta)

    @property
    def real_dimension(self) -> int:
        """N_beta = n + n(n-1)beta/2, the real dimension of the matrix space"""
        return self.n + self.n * (self.n - 1) * self.tier // 2
