"""Monte Carlo root counts against the integral-geometry prediction"""

import logging
from functools import partial
from typing import Optional

import numpy as np

from src.detcurve.arclength import alpha1
from src.detcurve.basis import CurveBasis
from src.detcurve.roots import count_roots
from src.ensembles.samplers import sample_matrices
from src.exact.volume import sigma_volume
from src.linalg.hermitian import HermitianMatrix
from src.models.ensemble import EnsembleSpec
from src.models.estimate import Estimate
from src.montecarlo.harness import MonteCarloHarness
from src.utils.errors import InputDomainError

logger = logging.getLogger(__name__)


def predicted_root_count(basis: CurveBasis, beta: int, n: int, alpha: Optional[float] = None) -> float:
    """
    Expected number of real roots for Gaussian coefficient matrices of G(beta, n).

    alpha1 times |Sigma| / |S^(N-2)|; for n = 1 the ratio is 1.
    """
    alpha = alpha1(basis) if alpha is None else alpha
    if n == 1:
        return alpha
    return alpha * sigma_volume(beta, n).ratio_to_sphere.value


def _root_count_kernel(basis: CurveBasis, spec: EnsembleSpec, conjugator, rng, count):
    width = basis.k + 1
    stack = sample_matrices(spec, rng, count * width)
    if conjugator is not None:
        stack = conjugator.conj().T[None, :, :] @ stack @ conjugator[None, :, :]
    counts = np.empty(count, dtype=np.int64)
    for trial in range(count):
        matrices = [
            HermitianMatrix.from_upper(stack[trial * width + i], spec.tier) for i in range(width)
        ]
        counts[trial] = count_roots(basis, matrices)
    return counts


def alpha_ratio_mc(
    basis: CurveBasis,
    spec: EnsembleSpec,
    trials: int,
    threads: Optional[int] = None,
    conjugator: Optional[np.ndarray] = None,
) -> Estimate:
    """
    Mean number of real roots of det(sum_i f_i(t) A_i) with A_i independent in G(beta, n).

    Args:
        conjugator: Optional fixed unitary U; every A_i is replaced by U^H A_i U

    Returns:
        Estimate of the mean count; `extra` holds alpha1, the predicted count
        and mean / alpha1
    """
    if conjugator is not None:
        conjugator = np.asarray(conjugator)
        size = 2 * spec.n if spec.tier == 4 else spec.n
        if conjugator.shape != (size, size):
            raise InputDomainError(f"conjugator must have shape {(size, size)}")
    alpha = alpha1(basis)
    moments = MonteCarloHarness(threads).run(
        partial(_root_count_kernel, basis, spec, conjugator), trials, spec.seed, label="detcurve-roots"
    )
    estimate = moments.estimate(0)
    predicted = predicted_root_count(basis, spec.tier, spec.n, alpha)
    estimate.extra.update({
        'alpha1': alpha,
        'predicted': predicted,
        'ratio': estimate.mean / alpha if alpha > 0 else None,
    })
    logger.info(f"mean root count {estimate.mean:.4f} vs predicted {predicted:.4f}")
    return estimate
