"""Bundle of the exact quantities for one (beta, n)"""

from dataclasses import dataclass
from typing import Optional

from src.exact.constants import log_norm_constant, real_dimension
from src.exact.gap import gap_derivative_zero
from src.exact.logvalue import LogValue
from src.exact.mellin import mellin_plus
from src.exact.volume import sigma_volume


@dataclass(frozen=True)
class ExactConstants:
    beta: int
    n: int
    C: LogValue
    mellin: LogValue
    f_prime_0: LogValue
    sigma_volume_ratio: Optional[LogValue]
    N_beta: int

    def to_dict(self) -> dict:
        return {
            'beta': self.beta,
            'n': self.n,
            'N_beta': self.N_beta,
            'C': self.C.to_dict(),
            'mellin': self.mellin.to_dict(),
            'f_prime_0': self.f_prime_0.to_dict(),
            'sigma_volume_ratio': self.sigma_volume_ratio.to_dict() if self.sigma_volume_ratio else None,
        }


def exact_constants(beta: int, n: int) -> ExactConstants:
    """All closed forms at (beta, n); the volume ratio is absent for n = 1"""
    return ExactConstants(
        beta=beta,
        n=n,
        C=log_norm_constant(beta, n),
        mellin=mellin_plus(beta, n - 1),
        f_prime_0=gap_derivative_zero(beta, n),
        sigma_volume_ratio=sigma_volume(beta, n).ratio_to_sphere if n >= 2 else None,
        N_beta=real_dimension(beta, n),
    )
