"""Monte Carlo expectations for random pencils and spans of Kostlan quadrics"""

import logging
import math
from functools import partial
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from src.ensembles.samplers import sample_matrices
from src.linalg.hermitian import HermitianMatrix
from src.models.ensemble import EnsembleSpec
from src.models.estimate import Estimate
from src.montecarlo.harness import MonteCarloHarness
from src.quadrics.arcs import pencil_arcs
from src.quadrics.sphere import mu_max_sphere
from src.quadrics.table import (
    betti_bound,
    euler_bound,
    small_betti_value,
    structural_identity_holds,
    table_E_k2,
    total_betti,
)
from src.utils.config import get_settings
from src.utils.errors import InputDomainError

logger = logging.getLogger(__name__)

# total_betti, mu, card, euler, identity failure, nu failure, certificate failures, small prefix
_COLUMNS = 8


class PencilSurvey(BaseModel):
    """Per-instance statistics of random real pencils averaged over one sample"""

    n: int = Field(ge=1)
    trials: int = Field(gt=0)
    seed: int = Field(ge=0)
    prefix: int = Field(ge=0)
    total_betti: Estimate
    mu: Estimate
    card: Estimate
    euler: Estimate
    small_prefix_fraction: Estimate
    identity_failures: int = Field(ge=0)
    nu_failures: int = Field(ge=0)
    certificate_failures: int = Field(ge=0)


def _pencil_kernel(n: int, prefix: int, rng, count):
    spec = EnsembleSpec(beta=1, n=n)
    stack = sample_matrices(spec, rng, 2 * count)
    out = np.zeros((count, _COLUMNS), dtype=np.int64)
    for trial in range(count):
        q1 = HermitianMatrix(1, n, np.array(stack[2 * trial]))
        q2 = HermitianMatrix(1, n, np.array(stack[2 * trial + 1]))
        arcs = pencil_arcs(q1, q2, polish_steps=0)
        table = table_E_k2(arcs)
        betti = [betti_bound(table, i) for i in range(n)]
        certified_wrong = sum(
            1 for i in range(n) if small_betti_value(arcs.mu, 2, n, i) == 1 and betti[i] != 1
        )
        out[trial] = (
            total_betti(table),
            arcs.mu,
            arcs.card,
            euler_bound(table),
            not structural_identity_holds(table, arcs),
            arcs.nu != n - arcs.mu,
            certified_wrong,
            all(b == 1 for b in betti[:prefix + 1]),
        )
    return out


def survey_pencils(
    n: int,
    trials: int,
    seed: int = 0,
    threads: Optional[int] = None,
    prefix: int = 10,
) -> PencilSurvey:
    """
    One Monte Carlo pass over independent GOE pairs (Q1, Q2).

    Args:
        prefix: The small-Betti fraction counts instances with b_i(E) = 1 for all i <= prefix
    """
    if n < 1:
        raise InputDomainError(f"n must be at least 1, got {n}")
    moments = MonteCarloHarness(threads).run(
        partial(_pencil_kernel, n, prefix), trials, seed, label="quadrics-pencils"
    )
    sums = moments.sums
    survey = PencilSurvey(
        n=n,
        trials=trials,
        seed=seed,
        prefix=prefix,
        total_betti=moments.estimate(0),
        mu=moments.estimate(1),
        card=moments.estimate(2),
        euler=moments.estimate(3),
        small_prefix_fraction=moments.estimate(7, prefix=prefix),
        identity_failures=int(sums[4]),
        nu_failures=int(sums[5]),
        certificate_failures=int(sums[6]),
    )
    if survey.identity_failures or survey.nu_failures:
        logger.warning(
            f"{survey.identity_failures} identity and {survey.nu_failures} nu failures among {trials} pencils",
            extra={'n': n},
        )
    return survey


def expected_betti_mc(n: int, trials: int, seed: int = 0, threads: Optional[int] = None) -> Estimate:
    """E b(E) for k = 2; `extra` carries E mu and E Card from the same sample"""
    survey = survey_pencils(n, trials, seed, threads)
    estimate = survey.total_betti.model_copy(deep=True)
    estimate.extra.update({
        'mu': survey.mu.mean,
        'card': survey.card.mean,
        'identity_failures': survey.identity_failures,
    })
    return estimate


def mu_tail_threshold(n: int) -> float:
    """n/2 + n^0.9; the mu tail count records instances at or above it"""
    return 0.5 * n + n ** 0.9


def _mu_kernel(k: int, n: int, grid_per_axis: int, refine_steps: int, rng, count):
    spec = EnsembleSpec(beta=1, n=n)
    stack = sample_matrices(spec, rng, k * count)
    tail = mu_tail_threshold(n)
    # mu, mu >= tail
    out = np.empty((count, 2), dtype=np.int64)
    for trial in range(count):
        matrices = [HermitianMatrix(1, n, np.array(stack[k * trial + i])) for i in range(k)]
        mu = mu_max_sphere(matrices, grid_per_axis, refine_steps).mu
        out[trial] = (mu, mu >= tail)
    return out


def expected_mu_mc(k: int, n: int, trials: int, seed: int = 0, threads: Optional[int] = None) -> Estimate:
    """
    E mu over spans of k independent GOE matrices.

    For k >= 3 the search uses the coarser Monte Carlo grid settings, so the
    estimate is biased low.
    """
    if k < 2:
        raise InputDomainError(f"need at least two quadrics, got {k}")
    settings = get_settings().quadrics
    moments = MonteCarloHarness(threads).run(
        partial(_mu_kernel, k, n, settings.mc_grid_per_axis, settings.mc_refine_steps),
        trials, seed, label=f"quadrics-mu-k{k}",
    )
    estimate = moments.estimate(0, k=k, n=n)
    estimate.extra['mu_minus_half_n'] = estimate.mean - 0.5 * n
    estimate.extra['bound'] = n ** 0.6
    estimate.extra['tail_threshold'] = mu_tail_threshold(n)
    estimate.extra['tail_count'] = int(moments.sums[1])
    logger.info(f"E mu - n/2 = {estimate.mean - 0.5 * n:.3f} (k={k}, n={n})",
                extra={'tail_count': estimate.extra['tail_count']})
    return estimate
