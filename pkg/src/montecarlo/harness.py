"""Reproducible parallel Monte Carlo over fixed-size trial blocks"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, List, Optional, Tuple

import numpy as np

from src.ensembles.rng import RngStream
from src.models.estimate import Estimate
from src.utils.config import default_threads, get_settings
from src.utils.errors import InputDomainError
from src.utils.metrics import get_metrics_tracker

logger = logging.getLogger(__name__)

# kernel(rng, count) -> array of shape (count,) or (count, p)
Kernel = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True)
class _BlockTotals:
    count: int
    sums: list
    cross: list
    exact: bool


def _block_totals(values: np.ndarray) -> _BlockTotals:
    if values.ndim == 1:
        values = values[:, None]
    if values.dtype == bool or np.issubdtype(values.dtype, np.integer):
        ints = values.astype(np.int64)
        sums = [int(s) for s in ints.sum(axis=0)]
        cross = np.einsum('ij,ik->jk', ints, ints).astype(object).tolist()
        return _BlockTotals(len(values), sums, cross, True)
    values = values.astype(float)
    sums = [math.fsum(col) for col in values.T.tolist()]
    cross = np.einsum('ij,ik->jk', values, values).tolist()
    return _BlockTotals(len(values), sums, cross, False)


@dataclass(frozen=True)
class SampleMoments:
    """First and second moments of the kernel columns over all trials"""

    trials: int
    seed: int
    sums: np.ndarray
    cross: np.ndarray
    wall_seconds: float

    @property
    def mean(self) -> np.ndarray:
        return self.sums / self.trials

    @property
    def covariance(self) -> np.ndarray:
        """Per-trial covariance of the columns (population normalisation)"""
        mean = self.mean
        return self.cross / self.trials - np.outer(mean, mean)

    def estimate(self, column: int = 0, **extra) -> Estimate:
        var = max(float(self.covariance[column, column]), 0.0)
        return Estimate(
            mean=float(self.mean[column]),
            stderr=math.sqrt(var / self.trials),
            trials=self.trials,
            seed=self.seed,
            wall_seconds=self.wall_seconds,
            extra=extra,
        )


class MonteCarloHarness:
    """
    Runs a kernel over `trials` independent trials split into blocks.

    Block b draws from RngStream(seed, b) and block totals are combined in
    block order, so results depend on (seed, trials, block size) only, never on
    the number of worker threads.
    """

    def __init__(self, threads: Optional[int] = None, block_size: Optional[int] = None):
        self.threads = default_threads(threads)
        self.block_size = block_size or get_settings().montecarlo.block_size

    def _blocks(self, trials: int) -> List[Tuple[int, int]]:
        count = math.ceil(trials / self.block_size)
        return [(b, min(self.block_size, trials - b * self.block_size)) for b in range(count)]

    def run(self, kernel: Kernel, trials: int, seed: int, label: str = "kernel") -> SampleMoments:
        if trials <= 0:
            raise InputDomainError(f"trials must be positive, got {trials}")
        blocks = self._blocks(trials)
        workers = min(self.threads, len(blocks))
        logger.info(
            f"Monte Carlo {label}: {trials} trials in {len(blocks)} blocks on {workers} threads",
            extra={'seed': seed},
        )

        def work(block: Tuple[int, int]) -> _BlockTotals:
            index, count = block
            values = np.asarray(kernel(RngStream(seed, index).generator(), count))
            if values.shape[0] != count:
                raise InputDomainError(f"kernel returned {values.shape[0]} rows for {count} trials")
            return _block_totals(values)

        start = perf_counter()
        if workers == 1:
            totals = [work(b) for b in blocks]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                totals = list(pool.map(work, blocks))
        elapsed = perf_counter() - start

        width = len(totals[0].sums)
        if all(t.exact for t in totals):
            sums = np.array([sum(t.sums[j] for t in totals) for j in range(width)], dtype=float)
            cross = np.array(
                [[sum(t.cross[i][j] for t in totals) for j in range(width)] for i in range(width)],
                dtype=float,
            )
        else:
            sums = np.array([math.fsum(t.sums[j] for t in totals) for j in range(width)])
            cross = np.array(
                [[math.fsum(t.cross[i][j] for t in totals) for j in range(width)] for i in range(width)]
            )

        get_metrics_tracker().record(label, elapsed, trials)
        logger.info(f"Monte Carlo {label} finished in {elapsed:.2f}s")
        return SampleMoments(trials, seed, sums, cross, elapsed)
