"""Self-adjoint matrices over the real, complex and quaternion tiers"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.utils.errors import InputDomainError, UnsupportedBetaError

SCALAR_TIERS = (1, 2, 4)


def symplectic_form(n: int) -> np.ndarray:
    """J = [[0, I], [-I, 0]] of size 2n"""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _hermitize(arr: np.ndarray) -> np.ndarray:
    """Rebuild a self-adjoint matrix from the upper triangle of `arr`"""
    upper = np.triu(arr, 1)
    out = upper + upper.conj().T
    diag = np.real(np.diagonal(arr))
    out[np.diag_indices_from(out)] = diag
    return out


def _project_quaternionic(arr: np.ndarray) -> np.ndarray:
    """Average M with J conj(M) J^-1 so the embedding commutes with J"""
    n = arr.shape[0] // 2
    j = symplectic_form(n)
    return 0.5 * (arr + j @ arr.conj() @ j.T)


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """
    Dense self-adjoint matrix Q of G(beta, n).

    beta=1 stores a real symmetric n x n array, beta=2 a complex Hermitian one,
    and beta=4 the 2n x 2n complex embedding [[A, B], [-conj(B), conj(A)]] of a
    quaternionic Hermitian matrix A + B j. Instances are read-only; use the
    constructors below rather than the raw initializer.
    """

    beta: int
    n: int
    entries: np.ndarray

    def __post_init__(self):
        if self.beta not in SCALAR_TIERS:
            raise UnsupportedBetaError(self.beta, SCALAR_TIERS, "HermitianMatrix")
        size = 2 * self.n if self.beta == 4 else self.n
        if self.n < 1 or self.entries.shape != (size, size):
            raise InputDomainError(
                f"entries of shape {self.entries.shape} do not fit beta={self.beta}, n={self.n}",
                details={'expected': [size, size]},
            )
        if not np.all(np.isfinite(self.entries)):
            raise InputDomainError("matrix has non-finite entries")
        self.entries.setflags(write=False)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_upper(cls, data, beta: int = 1) -> "HermitianMatrix":
        """Build from the upper triangle of `data` (n x n, or the 2n x 2n embedding for beta=4)"""
        arr = np.array(data)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputDomainError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputDomainError("matrix has non-finite entries")
        if beta == 1:
            if np.iscomplexobj(arr) and np.any(np.imag(arr) != 0):
                raise InputDomainError("beta=1 requires real entries")
            return cls(1, arr.shape[0], _hermitize(np.real(arr).astype(float)))
        if beta == 2:
            return cls(2, arr.shape[0], _hermitize(arr.astype(complex)))
        if beta == 4:
            if arr.shape[0] % 2:
                raise InputDomainError("beta=4 storage is the 2n x 2n complex embedding")
            embedded = _project_quaternionic(_hermitize(arr.astype(complex)))
            return cls(4, arr.shape[0] // 2, embedded)
        raise UnsupportedBetaError(beta, SCALAR_TIERS, "HermitianMatrix")

    @classmethod
    def from_quaternion(cls, a, b) -> "HermitianMatrix":
        """Quaternionic Hermitian A + B j from complex A (Hermitian) and B (antisymmetric)"""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputDomainError("quaternion parts must be square and of equal shape")
        a = _hermitize(a)
        b = 0.5 * (b - b.T)
        return cls(4, a.shape[0], np.block([[a, b], [-b.conj(), a.conj()]]))

    @classmethod
    def identity(cls, n: int, beta: int = 1) -> "HermitianMatrix":
        return cls.diagonal(np.ones(n), beta)

    @classmethod
    def diagonal(cls, values: Sequence[float], beta: int = 1) -> "HermitianMatrix":
        values = np.asarray(values, dtype=float)
        if beta == 4:
            return cls.from_quaternion(np.diag(values), np.zeros((len(values), len(values))))
        return cls.from_upper(np.diag(values).astype(complex if beta == 2 else float), beta)

    @classmethod
    def combine(cls, coefficients: Sequence[float], matrices: Sequence["HermitianMatrix"]) -> "HermitianMatrix":
        """Real linear combination sum c_i Q_i of matrices sharing (beta, n)"""
        if len(coefficients) != len(matrices) or not matrices:
            raise InputDomainError("need one real coefficient per matrix")
        first = matrices[0]
        for q in matrices[1:]:
            first.require_compatible(q)
        total = sum(float(c) * q.entries for c, q in zip(coefficients, matrices))
        return cls(first.beta, first.n, np.array(total))

    # -- structure ------------------------------------------------------------

    def require_compatible(self, other: "HermitianMatrix"):
        if (self.beta, self.n) != (other.beta, other.n):
            raise InputDomainError(
                f"matrices differ in (beta, n): {(self.beta, self.n)} vs {(other.beta, other.n)}"
            )

    @property
    def size(self) -> int:
        """Side length of the stored array"""
        return self.entries.shape[0]

    @property
    def real_dimension(self) -> int:
        """N_beta = n + n(n-1)beta/2"""
        return self.n + self.n * (self.n - 1) * self.beta // 2

    @property
    def frobenius_norm(self) -> float:
        sq = float(np.sum(np.abs(self.entries) ** 2))
        if self.beta == 4:
            sq /= 2.0
        return math.sqrt(sq)

    @property
    def trace(self) -> float:
        tr = float(np.real(np.trace(self.entries)))
        return tr / 2.0 if self.beta == 4 else tr

    def symplectic_defect(self) -> float:
        """max |J conj(M) J^-1 - M| of the embedding; 0 for beta in {1, 2}"""
        if self.beta != 4:
            return 0.0
        j = symplectic_form(self.n)
        return float(np.max(np.abs(j @ self.entries.conj() @ j.T - self.entries)))

    def conjugate(self, u) -> "HermitianMatrix":
        """U^H Q U for a unitary U of the stored size (symplectic unitary for beta=4)"""
        u = np.asarray(u)
        if u.shape != self.entries.shape:
            raise InputDomainError(f"conjugating matrix must have shape {self.entries.shape}")
        return HermitianMatrix.from_upper(u.conj().T @ self.entries @ u, self.beta)

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self.require_compatible(other)
        return HermitianMatrix(self.beta, self.n, self.entries + other.entries)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self.require_compatible(other)
        return HermitianMatrix(self.beta, self.n, self.entries - other.entries)

    def __neg__(self) -> "HermitianMatrix":
        return HermitianMatrix(self.beta, self.n, -self.entries)

    def __mul__(self, scalar: float) -> "HermitianMatrix":
        return HermitianMatrix(self.beta, self.n, float(scalar) * self.entries)

    __rmul__ = __mul__

    def allclose(self, other: "HermitianMatrix", atol: float = 1e-12) -> bool:
        return (self.beta, self.n) == (other.beta, other.n) and np.allclose(
            self.entries, other.entries, rtol=0.0, atol=atol
        )

    def to_list(self):
        """Nested lists for JSON output (complex entries as [re, im] pairs)"""
        if np.iscomplexobj(self.entries):
            return [[[float(z.real), float(z.imag)] for z in row] for row in self.entries]
        return self.entries.tolist()
