"""GF(2) model of the first homology of the punctured surface under a real involution.

``Sigma'`` is the surface with the ``4g - 4`` branch points of the rank-2
spectral cover removed. Its ``Z/2`` homology is spanned by the surface
generators, a small loop ``C_k`` / ``C'_k`` around each member of an
exchanged pair of branch points, and a loop ``D_l`` around each fixed branch
point, subject to the one relation that all puncture loops sum to zero.

``theta = f_* + 1`` is stored as a matrix whose columns are the images of the
generators. Kernel dimensions are computed on the quotient by the relation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidCaseParams, NoFixedBranchPoint, OddOvalAssignment
from .gf2 import GF2Matrix, nullspace_gf2, random_invertible, rank_gf2, solve_gf2
from .klein import validate_invariants

__all__ = [
    "ChainPresentation",
    "build_presentation",
    "case_of",
    "theta_kernel_dim",
    "sl2_exponent",
    "sigma_invariants_dim",
    "change_basis",
    "theta_squared_vanishes",
    "omega_is_invariant",
]

CASE3_VARIANTS = ("corrected", "literal")


@dataclass(frozen=True)
class ChainPresentation:
    generators: tuple
    theta: GF2Matrix
    relation: np.ndarray
    omega: Optional[np.ndarray]
    case: str
    params: dict
    oval_assignment: tuple = field(default=())

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        """Dimension of the homology: generators minus the one relation."""
        return self.n_generators - 1

    @property
    def n_zero(self) -> int:
        return self.params["n"] - len(set(self.oval_assignment))

    def vector(self, *names) -> np.ndarray:
        idx = {nm: i for i, nm in enumerate(self.generators)}
        v = np.zeros(self.n_generators, dtype=np.uint8)
        for nm in names:
            v[idx[nm]] ^= 1
        return v

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "case": self.case,
            "params": dict(self.params),
            "generators": list(self.generators),
            "oval_assignment": list(self.oval_assignment),
            "theta": self.theta.to_text().splitlines(),
            "relation": "".join(str(int(x)) for x in self.relation),
            "omega": None if self.omega is None else "".join(str(int(x)) for x in self.omega),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def case_of(g: int, n: int, a: int) -> tuple:
    """``(case, s, r)`` for the chosen basis of the surface."""
    if a == 0:
        r = n - 1
        if (g - r) % 2:
            raise InvalidCaseParams(f"a=0 needs g - n + 1 even, got g={g}, n={n}")
        return "Case1", (g - r) // 2, r
    r = n
    if (g - n) % 2 == 0:
        return "Case2", (g - r) // 2, r
    return "Case3", (g - r - 1) // 2, r


def build_presentation(
    g: int,
    n: int,
    a: int,
    t: int,
    u: int,
    oval_assignment: Sequence[int],
    case3: str = "corrected",
) -> ChainPresentation:
    """Generators and involution action for the given oval data.

    ``oval_assignment[l]`` is the oval (``0 .. n-1``) carrying the fixed
    branch point ``D_l``. When ``a = 0`` the last oval is the one left out of
    the basis (it is homologous to the sum of the others).

    In the odd case, ``case3="corrected"`` sends ``B''_j`` to ``X`` and ``Y``
    to ``sum A'' + sum C``, which makes ``theta`` square to zero;
    ``case3="literal"`` uses ``B''_j -> Y``, ``Y -> sum A''``, which
    reproduces the kernel dimension but not ``theta**2 = 0``.
    """
    if case3 not in CASE3_VARIANTS:
        raise ValueError(f"case3 must be one of {CASE3_VARIANTS}")
    if g < 2 or not validate_invariants(g, n, a):
        raise InvalidCaseParams(f"(n, a) = ({n}, {a}) is not admissible in genus {g}")
    if t < 0 or u < 0 or 2 * t + u != 4 * g - 4:
        raise InvalidCaseParams(f"need 2t + u = {4 * g - 4}, got t={t}, u={u}")
    if u == 0:
        raise InvalidCaseParams("u must be positive")
    assignment = tuple(int(x) for x in oval_assignment)
    if len(assignment) != u:
        raise InvalidCaseParams(f"assignment has {len(assignment)} entries, expected {u}")
    if any(not 0 <= x < n for x in assignment):
        raise InvalidCaseParams("assignment refers to a missing oval")
    for j in set(assignment):
        if assignment.count(j) % 2:
            raise OddOvalAssignment(f"oval {j} carries an odd number of fixed zeros")

    case, s, r = case_of(g, n, a)
    names = []
    for i in range(s):
        names += [f"A{i}", f"B{i}", f"A'{i}", f"B'{i}"]
    for j in range(r):
        names += [f"A''{j}", f"B''{j}"]
    for k in range(t):
        names += [f"C{k}", f"C'{k}"]
    names += [f"D{l}" for l in range(u)]
    if case == "Case3":
        names += ["X", "Y"]
    idx = {nm: i for i, nm in enumerate(names)}
    N = len(names)
    T = np.zeros((N, N), dtype=np.uint8)

    def vec(*ns):
        v = np.zeros(N, dtype=np.uint8)
        for x in ns:
            v[idx[x]] ^= 1
        return v

    def put(name, *image):
        T[:, idx[name]] = vec(*image)

    for i in range(s):
        for P, Q in (("A", "A'"), ("B", "B'")):
            put(f"{P}{i}", f"{P}{i}", f"{Q}{i}")
            put(f"{Q}{i}", f"{P}{i}", f"{Q}{i}")
    for k in range(t):
        put(f"C{k}", f"C{k}", f"C'{k}")
        put(f"C'{k}", f"C{k}", f"C'{k}")
    for j in range(r):
        put(f"A''{j}", *[f"D{l}" for l in range(u) if assignment[l] == j])
    all_a = [f"A''{j}" for j in range(r)]
    all_c = [f"C{k}" for k in range(t)]
    if case == "Case2":
        for j in range(r):
            put(f"B''{j}", *(all_a + all_c))
    elif case == "Case3":
        if case3 == "corrected":
            for j in range(r):
                put(f"B''{j}", "X")
            put("Y", *(all_a + all_c))
        else:
            for j in range(r):
                put(f"B''{j}", "Y")
            put("Y", *all_a)

    punctures = [f"C{k}" for k in range(t)] + [f"C'{k}" for k in range(t)] + [f"D{l}" for l in range(u)]
    R = vec(*punctures)
    omega = _invariant_omega(T, vec(*punctures), [idx[p] for p in punctures])
    params = {"g": g, "n": n, "a": a, "s": s, "r": r, "t": t, "u": u}
    return ChainPresentation(tuple(names), GF2Matrix(T), R, omega, case, params, assignment)


def _invariant_omega(T: np.ndarray, on_punctures: np.ndarray, puncture_idx: list):
    """A class that is 1 on every puncture loop and kills the image of ``theta``.

    Values on surface generators are unknowns solved over GF(2) (free ones
    set to 0). Returns ``None`` if no such class exists.
    """
    N = T.shape[0]
    surface = [i for i in range(N) if i not in set(puncture_idx)]
    # omega . T[:, c] = 0 for every column c:
    #   sum_{i in surface} omega_i T[i, c] = sum_{i in punctures} T[i, c]
    A = T[surface, :].T
    b = (on_punctures.astype(np.int64) @ T.astype(np.int64)) % 2
    x = solve_gf2(A, b)
    if x is None:
        return None
    omega = on_punctures.copy()
    omega[surface] = x
    return omega


def _kernel_dim(T: np.ndarray, R: np.ndarray, extra_rows: Optional[np.ndarray] = None) -> int:
    """dim of ``{x in V/<R> : T x in <R>}`` further cut by ``extra_rows . x = 0``."""
    N = T.shape[0]
    top = np.concatenate([T, R[:, None]], axis=1)
    if extra_rows is not None:
        extra = np.concatenate([extra_rows, np.zeros((extra_rows.shape[0], 1), dtype=np.uint8)], axis=1)
        top = np.concatenate([top, extra], axis=0)
    sols = top.shape[1] - rank_gf2(top)
    TR = (T.astype(np.int64) @ R) % 2
    r_in = (not TR.any()) or np.array_equal(TR, R)
    if extra_rows is not None:
        r_in = r_in and not ((extra_rows.astype(np.int64) @ R) % 2).any()
    return sols - (1 if r_in else 0)


def theta_kernel_dim(pres: ChainPresentation) -> int:
    return _kernel_dim(pres.theta.bits, pres.relation)


def sl2_exponent(pres: ChainPresentation) -> int:
    """Exponent ``d`` with ``2**d`` components: invariant classes killed by ``omega``, less ``3g - 3``."""
    if pres.params["u"] == 0:
        raise NoFixedBranchPoint("no fixed branch point")
    if pres.omega is None:
        raise NoFixedBranchPoint("no involution-invariant covering class on this presentation")
    g = pres.params["g"]
    return _kernel_dim(pres.theta.bits, pres.relation, pres.omega[None, :]) - (3 * g - 3)


def sigma_invariants_dim(g: int) -> int:
    if g < 2:
        raise ValueError("genus must be at least 2")
    return 6 * g - 6


def theta_squared_vanishes(pres: ChainPresentation) -> bool:
    T = pres.theta.bits.astype(np.int64)
    T2 = (T @ T) % 2
    return all((not c.any()) or np.array_equal(c, pres.relation) for c in T2.T)


def omega_is_invariant(pres: ChainPresentation) -> bool:
    if pres.omega is None:
        return False
    img = (pres.omega.astype(np.int64) @ pres.theta.bits.astype(np.int64)) % 2
    return not img.any() and not ((pres.omega.astype(np.int64) @ pres.relation) % 2)


def change_basis(pres: ChainPresentation, rng: np.random.Generator) -> ChainPresentation:
    """The same data written in a random basis ``x = B y``."""
    N = pres.n_generators
    B = random_invertible(N, rng)
    Binv = _inverse(B)
    T = (Binv.astype(np.int64) @ pres.theta.bits @ B) % 2
    R = (Binv.astype(np.int64) @ pres.relation) % 2
    omega = None if pres.omega is None else (pres.omega.astype(np.int64) @ B) % 2
    names = tuple(f"e{i}" for i in range(N))
    return ChainPresentation(
        names,
        GF2Matrix(T.astype(np.uint8)),
        R.astype(np.uint8),
        None if omega is None else omega.astype(np.uint8),
        pres.case,
        dict(pres.params),
        pres.oval_assignment,
    )


def _inverse(B: np.ndarray) -> np.ndarray:
    N = B.shape[0]
    cols = [solve_gf2(B, np.eye(N, dtype=np.uint8)[:, i]) for i in range(N)]
    return np.stack(cols, axis=1).astype(np.uint8)
