"""alpha_1: length of the projected coefficient curve divided by pi"""

import logging
import math
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from src.detcurve.basis import CurveBasis
from src.models.settings import DetCurveSettings
from src.utils.config import get_settings

logger = logging.getLogger(__name__)


def _panel_sums(speed: Callable, lo: np.ndarray, hi: np.ndarray, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    points = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    values = np.asarray(speed(points)).reshape(len(lo), len(x))
    return (values @ w) * half


def adaptive_length(speed: Callable, lower: float, upper: float, settings: DetCurveSettings) -> float:
    """
    Integral of `speed` over [lower, upper] by composite Gauss-Legendre.

    Each panel compares the rule with `gauss_nodes` points against the one with
    twice as many; panels whose difference exceeds their share of rtol are
    halved, up to `max_refinements` times. A panel whose difference stops
    shrinking under halving while already below `stall_rtol` of its share is
    at the rounding floor of `speed` and is accepted as it is.
    """
    x1, w1 = leggauss(settings.gauss_nodes)
    x2, w2 = leggauss(2 * settings.gauss_nodes)
    edges = np.linspace(lower, upper, settings.panels + 1)
    lo, hi = edges[:-1], edges[1:]
    parent_diff = np.full(len(lo), np.inf)
    accepted = []
    reference = None
    stalled = 0

    for level in range(settings.max_refinements + 1):
        coarse = _panel_sums(speed, lo, hi, x1, w1)
        fine = _panel_sums(speed, lo, hi, x2, w2)
        if reference is None:
            reference = abs(math.fsum(fine.tolist()))
        share = reference * (hi - lo) / (upper - lower)
        diff = np.abs(fine - coarse)
        converged = diff <= settings.rtol * share
        floor = ~converged & (diff >= 0.1 * parent_diff) & (diff <= settings.stall_rtol * share)
        stalled += int(np.count_nonzero(floor))
        done = converged | floor
        accepted.extend(fine[done].tolist())
        if np.all(done):
            break
        lo, hi, fine, diff = lo[~done], hi[~done], fine[~done], diff[~done]
        if level == settings.max_refinements:
            logger.warning(
                f"arc length refinement cap reached with {len(lo)} open panels",
                extra={'refinements': settings.max_refinements},
            )
            accepted.extend(fine.tolist())
            break
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        parent_diff = np.concatenate([diff, diff])

    if stalled:
        logger.debug(f"{stalled} arc length panels accepted at the rounding floor")
    return math.fsum(accepted)


def alpha1(basis: CurveBasis, settings: Optional[DetCurveSettings] = None) -> float:
    """
    (1/pi) times the length of t -> gamma(t) / |gamma(t)| on the unit sphere.

    Whole-line domains are integrated in u with t = tan(u).

    Raises:
        InputDomainError: gamma vanishes at a quadrature node
    """
    settings = settings or get_settings().detcurve
    length = math.fsum(
        weight * adaptive_length(speed, lower, upper, settings)
        for lower, upper, speed, weight in basis.arc_pieces()
    )
    logger.debug(f"alpha1 for k={basis.k}: {length / math.pi:.12g}")
    return length / math.pi
