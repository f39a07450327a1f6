"""Real zeros of determinants along curves of matrix combinations"""

from .basis import (
    CurveBasis,
    Domain,
    DomainKind,
    FunctionBasis,
    MonomialBasis,
    PolynomialBasis,
    TrigonometricBasis,
)
from .arclength import alpha1
from .roots import RootMethod, RootScan, count_roots, find_roots
from .experiment import alpha_ratio_mc, predicted_root_count

__all__ = [
    "CurveBasis",
    "Domain",
    "DomainKind",
    "FunctionBasis",
    "MonomialBasis",
    "PolynomialBasis",
    "TrigonometricBasis",
    "alpha1",
    "RootMethod",
    "RootScan",
    "count_roots",
    "find_roots",
    "alpha_ratio_mc",
    "predicted_root_count",
]
