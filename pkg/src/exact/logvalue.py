"""Signed values stored as logarithms of their modulus"""

import math
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class LogValue:
    """sign * exp(log_abs); sign 0 means exactly zero and log_abs is ignored"""

    log_abs: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(-math.inf, 0)

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def from_terms(cls, terms: Iterable[float], sign: int = 1) -> "LogValue":
        """Exactly rounded sum of log terms (math.fsum)"""
        return cls(math.fsum(terms), sign)

    @property
    def value(self) -> float:
        """Plain float; may overflow to +-inf"""
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf

    def __float__(self) -> float:
        return self.value

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogValue")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.log_abs - other.log_abs, self.sign * other.sign)

    def __neg__(self) -> "LogValue":
        return LogValue(self.log_abs, -self.sign)

    def relative_difference(self, other: "LogValue") -> float:
        """|a/b - 1| computed in log space; inf when signs differ"""
        if self.sign != other.sign:
            return math.inf
        if self.sign == 0:
            return 0.0
        return abs(math.expm1(self.log_abs - other.log_abs))

    def to_dict(self) -> dict:
        return {'value': self.value, 'log_abs': self.log_abs, 'sign': self.sign}
