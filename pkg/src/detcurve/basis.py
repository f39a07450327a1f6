"""Coefficient curves t -> (f_0(t), ..., f_k(t)) and their spherical speed"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import InputDomainError

_CHUNK = 4096


class DomainKind(str, Enum):
    LINE = "line"  # whole real line, compactified by t = tan(u)
    INTERVAL = "interval"  # closed [lower, upper]
    CIRCLE = "circle"  # periodic [lower, upper)


@dataclass(frozen=True)
class Domain:
    kind: DomainKind
    lower: float = -math.inf
    upper: float = math.inf

    def __post_init__(self):
        if self.kind is not DomainKind.LINE and not (
            math.isfinite(self.lower) and math.isfinite(self.upper) and self.lower < self.upper
        ):
            raise InputDomainError(f"{self.kind.value} domain needs finite lower < upper")

    @classmethod
    def line(cls) -> "Domain":
        return cls(DomainKind.LINE)

    @classmethod
    def interval(cls, lower: float, upper: float) -> "Domain":
        return cls(DomainKind.INTERVAL, lower, upper)

    @classmethod
    def circle(cls, lower: float = 0.0, upper: float = 2.0 * math.pi) -> "Domain":
        return cls(DomainKind.CIRCLE, lower, upper)

    @property
    def parameter_range(self) -> Tuple[float, float]:
        """Range of the compact parameter u"""
        if self.kind is DomainKind.LINE:
            return -0.5 * math.pi, 0.5 * math.pi
        return self.lower, self.upper

    def to_t(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """t(u) and dt/du"""
        if self.kind is DomainKind.LINE:
            return np.tan(u), 1.0 / np.cos(u) ** 2
        return u, np.ones_like(u)


def projective_speed(gamma: np.ndarray, dgamma: np.ndarray) -> np.ndarray:
    """|d/dt (gamma / |gamma|)|, row-wise; invariant under rescaling gamma and dgamma together"""
    norm = np.linalg.norm(gamma, axis=1)
    if np.any(norm == 0):
        raise InputDomainError("coefficient curve passes through the zero vector")
    unit = gamma / norm[:, None]
    v = dgamma / norm[:, None]
    perp = v - np.sum(unit * v, axis=1)[:, None] * unit
    return np.linalg.norm(perp, axis=1)


class CurveBasis(ABC):
    """k + 1 real functions with derivatives on a domain"""

    def __init__(self, domain: Domain):
        self.domain = domain

    @property
    @abstractmethod
    def k(self) -> int:
        ...

    @abstractmethod
    def evaluate(self, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """gamma(t) and gamma'(t), each of shape (len(t), k + 1), up to a common positive factor per t"""

    @property
    def is_polynomial(self) -> bool:
        return False

    def speed(self, u: np.ndarray) -> np.ndarray:
        """Spherical speed of the projected curve with respect to the compact parameter u"""
        u = np.asarray(u, dtype=float)
        out = np.empty_like(u)
        for start in range(0, len(u), _CHUNK):
            chunk = u[start:start + _CHUNK]
            t, dt = self.domain.to_t(chunk)
            gamma, dgamma = self.evaluate(t)
            out[start:start + _CHUNK] = projective_speed(gamma, dgamma) * dt
        return out

    def arc_pieces(self):
        """(lower, upper, speed, weight) pieces whose weighted integrals add up to the spherical length"""
        lower, upper = self.domain.parameter_range
        return [(lower, upper, self.speed, 1.0)]

    def combine(self, t: float, matrices: Sequence[np.ndarray]) -> np.ndarray:
        """sum_i f_i(t) A_i for stored matrix arrays"""
        gamma, _ = self.evaluate(np.array([t], dtype=float))
        return sum(c * a for c, a in zip(gamma[0], matrices))


class PolynomialBasis(CurveBasis):
    """
    f_i(t) = sum_p coefficients[i, p] t^p on the whole line.

    Values are returned scaled by max(1, |t|)^(-degree) so that evaluation far
    out on the line neither overflows nor loses the direction of gamma.
    """

    def __init__(self, coefficients, domain: Optional[Domain] = None):
        super().__init__(domain or Domain.line())
        coefficients = np.atleast_2d(np.asarray(coefficients, dtype=float))
        if coefficients.shape[0] < 1 or coefficients.shape[1] < 1:
            raise InputDomainError("polynomial basis needs at least one function")
        self.coefficients = coefficients

    @classmethod
    def monomials(cls, k: int) -> "PolynomialBasis":
        if k < 0:
            raise InputDomainError(f"k must be non-negative, got {k}")
        return MonomialBasis(k)

    @property
    def k(self) -> int:
        return self.coefficients.shape[0] - 1

    @property
    def degree(self) -> int:
        return self.coefficients.shape[1] - 1

    @property
    def is_polynomial(self) -> bool:
        return True

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        d = self.degree
        m = np.maximum(1.0, np.abs(t))
        tau = t / m
        p = np.arange(d + 1)
        powers = tau[:, None] ** p[None, :] * m[:, None] ** (p - d)[None, :]
        dpowers = np.zeros_like(powers)
        if d >= 1:
            dpowers[:, 1:] = (
                p[1:] * tau[:, None] ** (p[1:] - 1) * m[:, None] ** (p[1:] - 1 - d)
            )
        return powers @ self.coefficients.T, dpowers @ self.coefficients.T

    def rotated(self, theta: float, axes: Tuple[int, int] = (0, 1)) -> "PolynomialBasis":
        """Same basis with gamma rotated by theta in the plane of two coordinates; alpha1 is unchanged"""
        i, j = axes
        rotation = np.eye(self.k + 1)
        c, s = math.cos(theta), math.sin(theta)
        rotation[i, i], rotation[i, j], rotation[j, i], rotation[j, j] = c, -s, s, c
        return PolynomialBasis(rotation @ self.coefficients, self.domain)

    def homogeneous_coefficients(self, matrices: Sequence[np.ndarray]):
        """B_p = sum_i coefficients[i, p] A_i, so that sum_i f_i(t) A_i = sum_p t^p B_p"""
        return [sum(self.coefficients[i, p] * matrices[i] for i in range(self.k + 1))
                for p in range(self.degree + 1)]


class MonomialBasis(PolynomialBasis):
    """
    (1, t, ..., t^k) with a closed-form spherical speed.

    With x = t^2 the squared speed is Var(J) / t^2 for J geometric on
    {0..k} with ratio x. The closed form cancels badly when (1 - x) k is small,
    where the variance is summed directly instead.
    """

    def __init__(self, k: int):
        super().__init__(np.eye(k + 1))
        self._k = k

    def squared_speed_t(self, t: np.ndarray) -> np.ndarray:
        """Squared speed in t for 0 <= t <= 1"""
        t = np.asarray(t, dtype=float)
        K = self._k + 1
        x = t * t
        delta = (1.0 - t) * (1.0 + t)
        out = np.empty_like(t)
        direct = delta * K <= 0.5
        if np.any(~direct):
            xs, ds = x[~direct], delta[~direct]
            log_x = np.log1p(-ds)
            tail = -np.expm1(K * log_x)
            with np.errstate(under="ignore"):
                second = K * K * np.power(xs, K - 1) / tail ** 2
            out[~direct] = 1.0 / ds ** 2 - second
        if np.any(direct):
            j = np.arange(K, dtype=float)
            idx = np.flatnonzero(direct)
            for start in range(0, len(idx), 256):
                chunk = idx[start:start + 256]
                # log x <= 0, so the weights peak at j = 0
                w = np.exp(j[None, :] * np.log(x[chunk])[:, None])
                w /= w.sum(axis=1, keepdims=True)
                mean = w @ j
                out[chunk] = (w @ j ** 2 - mean ** 2) / x[chunk]
        return np.maximum(out, 0.0)

    def arc_pieces(self):
        # t -> -t and t -> 1/t are isometries of the projected curve
        return [(0.0, 1.0, lambda t: np.sqrt(self.squared_speed_t(t)), 4.0)]


class TrigonometricBasis(CurveBasis):
    """(cos t, sin t, cos 2t, sin 2t, ...) truncated to k + 1 functions on the circle"""

    def __init__(self, k: int = 1):
        super().__init__(Domain.circle())
        if k < 1:
            raise InputDomainError(f"trigonometric basis needs k >= 1, got {k}")
        self._k = k

    @property
    def k(self) -> int:
        return self._k

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        cols, dcols = [], []
        for i in range(self._k + 1):
            freq = i // 2 + 1
            if i % 2 == 0:
                cols.append(np.cos(freq * t))
                dcols.append(-freq * np.sin(freq * t))
            else:
                cols.append(np.sin(freq * t))
                dcols.append(freq * np.cos(freq * t))
        return np.stack(cols, axis=1), np.stack(dcols, axis=1)


class FunctionBasis(CurveBasis):
    """Arbitrary vectorized callables f_i with derivatives df_i"""

    def __init__(
        self,
        functions: Sequence[Callable[[np.ndarray], np.ndarray]],
        derivatives: Sequence[Callable[[np.ndarray], np.ndarray]],
        domain: Domain,
    ):
        super().__init__(domain)
        if len(functions) != len(derivatives) or not functions:
            raise InputDomainError("need one derivative per basis function")
        self.functions = list(functions)
        self.derivatives = list(derivatives)

    @property
    def k(self) -> int:
        return len(self.functions) - 1

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        gamma = np.stack([np.broadcast_to(f(t), t.shape) for f in self.functions], axis=1)
        dgamma = np.stack([np.broadcast_to(df(t), t.shape) for df in self.derivatives], axis=1)
        return gamma.astype(float), dgamma.astype(float)
