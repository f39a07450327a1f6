"""The table E of a pencil of quadrics and the Betti bounds read off it"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.quadrics.arcs import PencilArcs
from src.utils.errors import InputDomainError


@dataclass(frozen=True)
class TableE:
    """
    Entries e[i, j] for i in 0..k and j in 0..n-1.

    Anti-diagonal t + j = n - 1 - i collects the contributions to b_i.
    """

    k: int
    n: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.k + 1, self.n):
            raise InputDomainError(f"table must have shape {(self.k + 1, self.n)}, got {self.entries.shape}")
        if np.any(self.entries < 0):
            raise InputDomainError("table entries must be non-negative")

    def to_list(self):
        return self.entries.astype(int).tolist()


def table_E_k2(arcs: PencilArcs) -> TableE:
    """
    3 x n table of a pencil.

    Column 0 is 1 for j >= mu, column 2 is 1 for j <= nu - 1 and the middle
    column holds b0(Omega^(j+1)) - 1 whenever Omega^(j+1) = {index >= j + 1}
    is a non-empty proper part of the circle.
    """
    n = arcs.n
    mu, nu = arcs.mu, arcs.nu
    entries = np.zeros((3, n), dtype=np.int64)
    j = np.arange(n)
    entries[0] = j >= mu
    entries[2] = j <= nu - 1
    for col in range(n):
        if arcs.is_proper(col + 1):
            entries[1, col] = arcs.components(col + 1) - 1
    return TableE(2, n, entries)


def betti_bound(table: TableE, i: int) -> int:
    """b_i(E) = sum_t e[t, n - 1 - i - t]"""
    if not 0 <= i <= table.n - 1:
        raise InputDomainError(f"Betti index must lie in [0, {table.n - 1}], got {i}")
    total = 0
    for t in range(table.k + 1):
        j = table.n - 1 - i - t
        if 0 <= j < table.n:
            total += int(table.entries[t, j])
    return total


def total_betti(table: TableE) -> int:
    """b(E), the sum of all entries"""
    return int(np.sum(table.entries))


def euler_bound(table: TableE) -> int:
    """sum_i (-1)^i b_i(E), with every entry e[t, j] signed by (-1)^(n - 1 - t - j)"""
    t = np.arange(table.k + 1)[:, None]
    j = np.arange(table.n)[None, :]
    signs = np.where((table.n - 1 - t - j) % 2 == 0, 1, -1)
    return int(np.sum(signs * table.entries))


def small_betti_value(mu: int, k: int, n: int, i: int) -> Optional[int]:
    """1 when i < n - mu - k - 2, where b_i of the intersection is certified; None otherwise"""
    if i < n - mu - k - 2:
        return 1
    return None


def structural_identity_holds(table: TableE, arcs: PencilArcs) -> bool:
    """b(E) == 3n - 4 mu + Card / 2 for a generic pencil"""
    return 2 * total_betti(table) == 6 * arcs.n - 8 * arcs.mu + arcs.card
