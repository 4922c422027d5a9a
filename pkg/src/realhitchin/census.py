"""Which invariant tuples ``(n, a, n_plus, u/2)`` occur for real hyperelliptic curves.

The admissible tuples come from constraints alone. Realizability is probed
by a structured grid of root patterns and zero placements followed by a
seeded random search; every witness is re-checked by the monodromy and
homology oracles. A tuple that is never hit is reported as not found
together with the search budget; that is evidence, not a proof.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .counting import count_gl, count_gl2, count_sl2
from .curve import InvolutionKind, build_curve
from .errors import NonSimpleZeros
from .homology import build_presentation, sl2_exponent, theta_kernel_dim
from .klein import admissible_pairs, classify_hyperelliptic
from .monodromy import count_nS_oracle
from .realpoly import INF, Point, parse_point
from .spectral import QuadDifferential, analyze, spectral_genus

__all__ = [
    "InvariantTuple",
    "Budget",
    "Witness",
    "NotFound",
    "admissible_tuples",
    "configurations",
    "realize",
    "census",
    "verify_witness",
]

KINDS = (InvolutionKind.CONJ_F, InvolutionKind.CONJ_SIGMA_F)


@dataclass(frozen=True, order=True)
class InvariantTuple:
    n: int
    a: int
    n_plus: int
    u_half: int

    def as_list(self) -> list:
        return [self.n, self.a, self.n_plus, self.u_half]

    def key(self) -> str:
        return ",".join(str(x) for x in self.as_list())


def admissible_tuples(g: int) -> list:
    out = []
    for n, a in admissible_pairs(g):
        for u_half in range(0, 2 * g - 1):
            if n == 0 and u_half:
                continue
            top = n if u_half == 0 else n - 1
            for n_plus in range(top + 1):
                out.append(InvariantTuple(n, a, n_plus, u_half))
    return sorted(out)


@dataclass
class Budget:
    grid: bool = True
    random: int = 100_000
    grid_cap: int = 2_000  # zero placements per grid curve

    def to_dict(self) -> dict:
        return {"grid": self.grid, "random": self.random, "grid_cap": self.grid_cap}


@dataclass(frozen=True)
class Config:
    roots: tuple
    leading: int
    zeros: tuple
    sign: int
    kind: InvolutionKind
    strategy: str

    def to_dict(self) -> dict:
        return {
            "roots": [str(r) for r in self.roots],
            "leading": self.leading,
            "zeros": [str(z) for z in self.zeros],
            "sign": self.sign,
            "kind": self.kind.value,
            "strategy": self.strategy,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Config":
        return cls(
            tuple(parse_point(r) for r in d["roots"]),
            int(d.get("leading", 1)),
            tuple(parse_point(z) for z in d["zeros"]),
            int(d.get("sign", 1)),
            InvolutionKind.parse(d.get("kind", "ConjF")),
            d.get("strategy", ""),
        )

    def build(self) -> QuadDifferential:
        curve = build_curve(self.roots, leading=Fraction(self.leading))
        return QuadDifferential(curve, self.zeros, self.sign, self.kind)


@dataclass
class Witness:
    tuple: InvariantTuple
    config: Config
    n_S: int
    oracle_n_S: int
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tuple": self.tuple.as_list(),
            "config": self.config.to_dict(),
            "n_S": self.n_S,
            "oracle_n_S": self.oracle_n_S,
            "checks": self.checks,
        }


@dataclass
class NotFound:
    tuple: InvariantTuple
    tried: int
    strategies: list

    def to_dict(self) -> dict:
        return {"tuple": self.tuple.as_list(), "tried": self.tried, "strategies": self.strategies}


def tuple_of(q: QuadDifferential) -> InvariantTuple:
    kl = classify_hyperelliptic(q.curve, q.kind)
    sp = analyze(q)
    return InvariantTuple(kl.n, kl.a, sp.n_plus, sp.u_half)


# ---------------------------------------------------------------------------
# configuration generators


def _grid_curves(g: int) -> Iterator[tuple]:
    for k in range(g + 2):
        reals = [Point(Fraction(-j)) for j in range(k, 0, -1)] + [Point(Fraction(j)) for j in range(1, k + 1)]
        for shift in (Fraction(0), Fraction(1, 2)):
            pairs = []
            for j in range(1, g + 2 - k):
                z = Point(shift, Fraction(j))
                pairs += [z, z.conjugate()]
            yield tuple(reals + pairs), k
            if k == 0:
                break


def _real_candidates(roots: tuple, k: int) -> list:
    xs = sorted(r.re for r in roots if r.is_real)
    if not xs:
        return [Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(5, 2)]
    out = [xs[0] - Fraction(1, 2), xs[-1] + Fraction(1, 2)]
    out += [(x + y) / 2 for x, y in zip(xs, xs[1:])]
    extra = [(xs[i] * 3 + xs[i + 1]) / 4 for i in range(len(xs) - 1)]
    return sorted(set(out + extra))


_COMPLEX_CANDIDATES = (Point(Fraction(1, 3), Fraction(7, 2)), Point(Fraction(-1, 5), Fraction(1, 4)))


def _zero_sets(g: int, reals: list, cap: int) -> Iterator[tuple]:
    m = 2 * g - 2
    real_pts = [Point(x) for x in reals] + [INF]
    count = 0
    for j in range(m // 2 + 1):
        r = m - 2 * j
        for cs in itertools.combinations(_COMPLEX_CANDIDATES, j) if j <= len(_COMPLEX_CANDIDATES) else ():
            for rs in itertools.combinations(real_pts, r):
                zs = list(rs)
                for c in cs:
                    zs += [c, c.conjugate()]
                yield tuple(zs)
                count += 1
                if count >= cap:
                    return


def grid_configurations(g: int, cap: int = 2_000) -> Iterator[Config]:
    for roots, k in _grid_curves(g):
        for zeros in _zero_sets(g, _real_candidates(roots, k), cap):
            for leading in (1, -1):
                for sign in (1, -1):
                    for kind in KINDS:
                        yield Config(roots, leading, zeros, sign, kind, "grid")


def _rand_frac(rng: random.Random, lo: int = -12, hi: int = 12) -> Fraction:
    return Fraction(rng.randint(lo * 6, hi * 6), rng.randint(1, 6))


def random_configuration(g: int, rng: random.Random) -> Config:
    deg = 2 * g + 2
    k = rng.randint(0, g + 1)
    reals = set()
    while len(reals) < 2 * k:
        reals.add(_rand_frac(rng))
    pairs = set()
    while len(pairs) < g + 1 - k:
        pairs.add(Point(_rand_frac(rng), abs(_rand_frac(rng, 0, 8)) or Fraction(1)))
    roots = [Point(x) for x in sorted(reals)]
    for z in sorted(pairs, key=lambda z: (z.re, z.im)):
        roots += [z, z.conjugate()]
    assert len(roots) == deg
    m = 2 * g - 2
    n_pairs = rng.randint(0, m // 2)
    zeros = set()
    while len(zeros) < 2 * n_pairs:
        z = Point(_rand_frac(rng), abs(_rand_frac(rng, 0, 8)) or Fraction(1, 3))
        zeros |= {z, z.conjugate()}
    zeros = sorted(zeros, key=str)
    real_zeros = set()
    need = m - len(zeros)
    if need and rng.random() < 0.25:
        real_zeros.add(INF)
    while len(real_zeros) < need:
        real_zeros.add(Point(_rand_frac(rng)))
    zeros = tuple(zeros) + tuple(sorted(real_zeros, key=str))
    return Config(
        tuple(roots),
        rng.choice((1, -1)),
        zeros,
        rng.choice((1, -1)),
        rng.choice(KINDS),
        "random",
    )


def configurations(g: int, budget: Budget, seed: int) -> Iterator[Config]:
    if budget.grid:
        yield from grid_configurations(g, budget.grid_cap)
    rng = random.Random(seed)
    for _ in range(budget.random):
        yield random_configuration(g, rng)


# ---------------------------------------------------------------------------
# verification and search


def verify_witness(config: Config, expected: Optional[InvariantTuple] = None) -> Witness:
    """Re-analyse a configuration and cross-check it against both oracles."""
    q = config.build()
    tup = tuple_of(q)
    if expected is not None and tup != expected:
        raise AssertionError(f"configuration gives {tup}, expected {expected}")
    sp = analyze(q)
    g = q.curve.g
    oracle = count_nS_oracle(q)
    checks = {
        "oracle_agrees": oracle == sp.n_S,
        "gl_formulas_agree": count_gl(sp.n_S, spectral_genus(2, g)).d == count_gl2(sp.n_plus, sp.u).d,
    }
    if sp.u > 0:
        assignment = [i for i, c in enumerate(sp.oval_zero_counts) for _ in range(c)]
        pres = build_presentation(g, tup.n, tup.a, (4 * g - 4 - sp.u) // 2, sp.u, assignment)
        checks["homology_kernel"] = theta_kernel_dim(pres) == 3 * g - 3 + sp.n_zero + sp.u_half
        checks["homology_sl2"] = sl2_exponent(pres) == count_sl2(sp.n_zero, sp.u).d
    return Witness(tup, config, sp.n_S, oracle, checks)


def _search(g: int, targets: set, budget: Budget, seed: int) -> tuple:
    found = {}
    tried = 0
    for config in configurations(g, budget, seed):
        tried += 1
        try:
            tup = tuple_of(config.build())
        except NonSimpleZeros:
            continue
        if tup in targets and tup not in found:
            found[tup] = config
            if len(found) == len(targets) and config.strategy == "grid" and not budget.random:
                break
    return found, tried


def realize(tup, g: int, budget: Optional[Budget] = None, seed: int = 0):
    """A verified witness for one tuple, or :class:`NotFound` with search statistics."""
    if not isinstance(tup, InvariantTuple):
        tup = InvariantTuple(*tup)
    budget = budget or Budget()
    if tup not in admissible_tuples(g):
        raise ValueError(f"{tup.as_list()} is not admissible in genus {g}")
    tried = 0
    strategies = []
    for config in configurations(g, budget, seed):
        tried += 1
        if config.strategy not in strategies:
            strategies.append(config.strategy)
        try:
            if tuple_of(config.build()) == tup:
                return verify_witness(config, tup)
        except NonSimpleZeros:
            continue
    return NotFound(tup, tried, strategies)


def census(g: int = 2, budget: Optional[Budget] = None, seed: int = 0) -> dict:
    budget = budget or Budget()
    admissible = admissible_tuples(g)
    found, tried = _search(g, set(admissible), budget, seed)
    witnesses = {}
    for tup in admissible:
        if tup in found:
            witnesses[tup.key()] = verify_witness(found[tup], tup).to_dict()
    missing = [t.as_list() for t in admissible if t not in found]
    return {
        "schema": 1,
        "g": g,
        "admissible": len(admissible),
        "realized": len(found),
        "missing": missing,
        "witnesses": witnesses,
        "budget": dict(budget.to_dict(), tried=tried),
        "seed": seed,
    }
