"""Closed-form component counts for real Hitchin fibres, plus the torus lemma oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotApplicable, NotPowerOfTwoForm, OddU
from .gf2 import rank_gf2

__all__ = [
    "ComponentCount",
    "RealityType",
    "RealityTypeQuery",
    "count_gl",
    "count_gl2",
    "count_sl2",
    "torus_d",
    "real_or_quaternionic",
    "random_lattice_involution",
    "fixed_two_torsion",
    "rank_gf2",
]


@dataclass(frozen=True)
class ComponentCount:
    group: str
    d: int
    inputs: dict = field(default_factory=dict)
    g_S: Optional[int] = None

    @property
    def count(self) -> int:
        return 2**self.d

    def to_dict(self) -> dict:
        return {"group": self.group, "d": self.d, "count": self.count}


def count_gl(n_S: int, g_S: int) -> ComponentCount:
    """Components of a generic real GL(n) fibre from the number of fixed circles upstairs."""
    if n_S < 0 or g_S < 2:
        raise ValueError("need n_S >= 0 and g_S >= 2")
    if n_S > 0:
        d = n_S - 1
    else:
        d = 0 if g_S % 2 == 0 else 1
    return ComponentCount("GL(n)", d, {"n_S": n_S}, g_S)


def count_gl2(n_plus: int, u: int) -> ComponentCount:
    if u % 2:
        raise OddU(f"u = {u} is odd")
    if n_plus < 0 or u < 0:
        raise ValueError("n_plus and u must be non-negative")
    e = 2 * n_plus + u // 2
    return ComponentCount("GL(2)", e - 1 if e > 0 else 1, {"n_plus": n_plus, "u": u})


def count_sl2(n_zero: int, u: int) -> ComponentCount:
    """Components of the real SL(2) fibre; only defined when some branch point of the cover is fixed."""
    if u % 2:
        raise OddU(f"u = {u} is odd")
    if u == 0:
        raise NotApplicable("no branch point of the spectral cover is fixed (u = 0)")
    if n_zero < 0:
        raise ValueError("n_zero must be non-negative")
    return ComponentCount("SL(2)", n_zero + u // 2 - 1, {"n_zero": n_zero, "u": u})


def torus_d(m: int, fixed_two_torsion: int) -> int:
    """Recover ``d`` from a count ``2**(m + d)`` of fixed points of order two."""
    if m < 1 or fixed_two_torsion < 1:
        raise ValueError("need m >= 1 and a positive count")
    e = fixed_two_torsion.bit_length() - 1
    if fixed_two_torsion != 1 << e or not m <= e <= 2 * m:
        raise NotPowerOfTwoForm(f"{fixed_two_torsion} is not 2**(m+d) with 0 <= d <= {m}")
    return e - m


class RealityType(str, enum.Enum):
    REAL = "Real"
    QUATERNIONIC = "Quaternionic"
    NEEDS_HOLONOMY = "NeedsHolonomy"
    NEEDS_EPSILON1 = "NeedsEpsilon1"


@dataclass(frozen=True)
class RealityTypeQuery:
    u: int
    f_has_fixed_points: bool = True
    rho_mu: Optional[int] = None


def real_or_quaternionic(query: RealityTypeQuery) -> RealityType:
    """Whether the lifted structure on the spectral line bundle squares to +1 or -1.

    ``rho_mu`` is the holonomy sign that decides the case where no branch
    point is fixed; without fixed points on the base the extra sign is not
    determined and is reported rather than guessed.
    """
    if query.u % 2:
        raise OddU(f"u = {query.u} is odd")
    if not query.f_has_fixed_points:
        return RealityType.NEEDS_EPSILON1
    if query.u > 0:
        return RealityType.REAL
    if query.rho_mu is None:
        return RealityType.NEEDS_HOLONOMY
    if query.rho_mu not in (1, -1):
        raise ValueError("rho_mu must be +1 or -1")
    return RealityType.REAL if query.rho_mu == 1 else RealityType.QUATERNIONIC


# ---------------------------------------------------------------------------
# torus lemma oracle


def _random_unimodular(dim: int, rng: np.random.Generator, steps: int = 40) -> tuple:
    """A random integer matrix of determinant +-1 and its inverse, built from elementary moves."""
    P = np.eye(dim, dtype=np.int64)
    Q = np.eye(dim, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(dim, size=2, replace=False)
        c = int(rng.integers(-2, 3))
        if c == 0:
            continue
        P[:, j] += c * P[:, i]  # P <- P E,  E = I + c e_i e_j^T
        Q[i, :] -= c * Q[j, :]  # Q <- E^-1 Q
    return P, Q


def random_lattice_involution(m: int, rng: np.random.Generator) -> tuple:
    """An integral involution of ``Z**(2m)`` with ``m``-dimensional +-1 eigenspaces, and a translation.

    The involution is ``P (I_a + (-I_b) + swap^c) P^-1`` with ``a + c = b + c = m``;
    the translation ``(I + M) y`` makes ``x -> M x + t`` an involution of
    the 2-torsion with at least one fixed point.
    """
    c = int(rng.integers(0, m + 1))
    a = m - c
    blocks = [1] * a + [-1] * a
    D = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i, s in enumerate(blocks):
        D[i, i] = s
    for j in range(c):
        k = 2 * a + 2 * j
        D[k, k + 1] = D[k + 1, k] = 1
    P, Q = _random_unimodular(2 * m, rng)
    M = P @ D @ Q
    y = rng.integers(0, 2, size=2 * m)
    t = ((np.eye(2 * m, dtype=np.int64) + M) @ y) % 2
    return M, t


def fixed_two_torsion(M, t=None) -> int:
    """Brute-force count of ``x`` in ``(Z/2)**dim`` with ``M x + t = x``."""
    M = np.asarray(M, dtype=np.int64) % 2
    dim = M.shape[0]
    t = np.zeros(dim, dtype=np.int64) if t is None else np.asarray(t, dtype=np.int64) % 2
    pts = ((np.arange(2**dim)[:, None] >> np.arange(dim)) & 1).astype(np.int64)
    img = (pts @ M.T + t) % 2
    return int(np.count_nonzero(np.all(img == pts, axis=1)))
