"""Monte Carlo estimate model"""

from typing import Any, Dict

from pydantic import BaseModel, Field


class Estimate(BaseModel):
    """Point estimate with its sampling error and provenance"""

    mean: float
    stderr: float = Field(ge=0.0)
    trials: int = Field(gt=0)
    seed: int = Field(ge=0)
    wall_seconds: float = Field(default=0.0, ge=0.0)

    # Deterministic discretisation error (e.g. finite-difference bias), not sampling noise
    bias: float = Field(default=0.0, ge=0.0)
    extra: Dict[str, Any] = Field(default_factory=dict)

    def tolerance(self, sigmas: float = 3.0) -> float:
        """Half-width of the acceptance band: sigmas * stderr + bias"""
        return sigmas * self.stderr + self.bias

    def agrees_with(self, value: float, sigmas: float = 3.0) -> bool:
        """Whether `value` lies within the acceptance band around the mean"""
        return abs(self.mean - value) <= self.tolerance(sigmas)
