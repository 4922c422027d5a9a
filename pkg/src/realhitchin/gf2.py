"""Dense linear algebra over GF(2) on numpy ``uint8`` arrays."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["GF2Matrix", "rank_gf2", "nullspace_gf2", "solve_gf2", "random_invertible"]


def _rref(A: np.ndarray):
    A = np.array(A, dtype=np.uint8) % 2
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.nonzero(A[r:, c])[0]
        if len(piv) == 0:
            continue
        p = r + piv[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        mask = A[:, c].astype(bool)
        mask[r] = False
        A[mask] ^= A[r]
        pivots.append(c)
        r += 1
    return A, pivots


def rank_gf2(M) -> int:
    return len(_rref(M)[1])


def nullspace_gf2(M) -> np.ndarray:
    """Basis of ``{x : M x = 0}`` as the rows of the returned array."""
    A, pivots = _rref(M)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = A[r, f]
    return basis


def solve_gf2(M, b):
    """One solution of ``M x = b`` with free variables set to zero, or ``None``."""
    M = np.asarray(M, dtype=np.uint8) % 2
    aug = np.concatenate([M, (np.asarray(b, dtype=np.uint8) % 2)[:, None]], axis=1)
    A, pivots = _rref(aug)
    n = M.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for r, p in enumerate(pivots):
        x[p] = A[r, n]
    return x


def random_invertible(dim: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        B = rng.integers(0, 2, size=(dim, dim), dtype=np.uint8)
        if rank_gf2(B) == dim:
            return B


@dataclass(frozen=True)
class GF2Matrix:
    bits: np.ndarray

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def rank(self) -> int:
        return rank_gf2(self.bits)

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        prod = self.bits.astype(np.int64) @ other.bits.astype(np.int64)
        return GF2Matrix((prod % 2).astype(np.uint8))

    def apply(self, v) -> np.ndarray:
        return ((self.bits.astype(np.int64) @ np.asarray(v, dtype=np.int64)) % 2).astype(np.uint8)

    def to_text(self) -> str:
        """One line of ``0``/``1`` characters per row."""
        return "\n".join("".join(str(int(x)) for x in row) for row in self.bits)

    @classmethod
    def from_text(cls, text: str) -> "GF2Matrix":
        rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
        return cls(np.array([[int(ch) for ch in row] for row in rows], dtype=np.uint8))
