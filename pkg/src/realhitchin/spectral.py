"""Rank-2 spectral data of a real quadratic differential.

The differential is ``q = sign * P(z) dz**2 / w**2`` where ``P`` has one root
per listed zero ``a_i`` (``2g - 2`` of them, ``inf`` meaning the factor is
omitted). For genus 2 this is every quadratic differential; in higher genus
it is the family of hyperelliptic-invariant ones with divisor
``z^-1(a_1) + ... + z^-1(a_{2g-2})``.

On a fixed circle the coefficient of ``q`` in a real coordinate is
``sign * P(z) / p(z)``; at infinity the chart ``zeta = 1/z`` contributes
``dz**2 = zeta**-4 dzeta**2``, ``P = zeta**-m P~`` and
``p = zeta**-(2g+2) p~``, so ``q1(zeta) = sign * zeta**(2g-2-m) P~ / p~`` and
the weight factors are even away from zeros at infinity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .curve import HyperellipticCurve, InvolutionKind, build_curve
from .errors import NonSimpleZeros, RealityViolation
from .realpoly import INF, Infinity, Point, RealPolynomial, SignInterval, parse_point

__all__ = [
    "HyperellipticCurve",
    "build_curve",
    "Oval",
    "QuadDifferential",
    "SpectralInvariants",
    "ovals",
    "check_reality",
    "analyze",
    "spectral_genus",
    "fixed_degree",
    "fibre_dim",
]


@dataclass(frozen=True)
class Oval:
    """A fixed circle of the involution, described by the real arc it lies over.

    ``covering`` is 2 when the circle double covers its arc (the usual case:
    the two sheets are glued at the arc's endpoints, or, for a whole-line arc
    in even genus, through infinity) and 1 when two separate circles lie over
    the whole line (no real branch points, odd genus); ``sheet`` then tells
    them apart.
    """

    arc_index: int
    arc: SignInterval
    covering: int = 2
    sheet: Optional[int] = None

    @property
    def contains_infinity(self) -> bool:
        return self.arc.contains_infinity

    @property
    def is_full_circle(self) -> bool:
        return self.arc.is_full_circle

    def endpoints(self, curve: HyperellipticCurve) -> tuple:
        """Approximate real endpoints ``(left, right)``; ``None`` for the full line."""
        if self.is_full_circle:
            return None
        rr = curve.roots.real_roots
        return rr[self.arc.left].approx, rr[self.arc.right].approx

    def describe(self, curve: HyperellipticCurve) -> str:
        if self.is_full_circle:
            tag = "" if self.sheet is None else f" sheet {'+' if self.sheet > 0 else '-'}"
            return f"RP1 (covering {self.covering}){tag}"
        rr = curve.roots.real_roots
        lo, hi = (_root_str(rr[self.arc.left]), _root_str(rr[self.arc.right]))
        if self.contains_infinity:
            return f"[{lo}, inf, {hi}]"
        return f"[{lo}, {hi}]"


def _root_str(r) -> str:
    return str(r.exact) if r.exact is not None else f"~{r.approx:.6g}"


def ovals(curve: HyperellipticCurve, kind=InvolutionKind.CONJ_F) -> list:
    """Fixed circles of a conjugation-type involution, one per fixed real arc."""
    kind = InvolutionKind.parse(kind)
    if kind.is_antipodal:
        return []
    target = kind.fixed_sign
    out = []
    for i, arc in enumerate(curve.profile):
        if arc.sign != target:
            continue
        if arc.is_full_circle and curve.g % 2 == 1:
            out.append(Oval(i, arc, covering=1, sheet=1))
            out.append(Oval(i, arc, covering=1, sheet=-1))
        else:
            out.append(Oval(i, arc))
    return out


@dataclass(frozen=True)
class QuadDifferential:
    curve: HyperellipticCurve
    zeros: tuple
    sign: int = 1
    kind: InvolutionKind = InvolutionKind.CONJ_F

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(parse_point(a) for a in self.zeros))
        object.__setattr__(self, "kind", InvolutionKind.parse(self.kind))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        expected = 2 * self.curve.g - 2
        if len(self.zeros) != expected:
            raise ValueError(f"genus {self.curve.g} needs {expected} zeros, got {len(self.zeros)}")

    @classmethod
    def from_pair(cls, curve, a1, a2, sign: int = 1, kind=InvolutionKind.CONJ_F) -> "QuadDifferential":
        return cls(curve, (a1, a2), sign, kind)

    @property
    def a1(self):
        return self.zeros[0]

    @property
    def a2(self):
        return self.zeros[1]

    @property
    def n_infinite(self) -> int:
        return sum(1 for a in self.zeros if isinstance(a, Infinity))

    def numerator(self) -> RealPolynomial:
        """``P(z)``, the product of ``(z - a)`` over finite zeros (requires reality)."""
        finite = [a for a in self.zeros if not isinstance(a, Infinity)]
        if not finite:
            return RealPolynomial((1,))
        return RealPolynomial.from_roots(finite)

    def negated(self) -> "QuadDifferential":
        return QuadDifferential(self.curve, self.zeros, -self.sign, self.kind)

    def to_dict(self) -> dict:
        return {
            "zeros": [str(a) for a in self.zeros],
            "sign": self.sign,
            "kind": self.kind.value,
        }


@dataclass(frozen=True)
class SpectralInvariants:
    n: int
    n_plus: int
    n_minus: int
    n_zero: int
    u: int
    oval_zero_counts: tuple
    n_S: int
    g: int
    oval_signs: tuple = field(default=())

    @property
    def u_half(self) -> int:
        return self.u // 2

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "n_zero": self.n_zero,
            "u": self.u,
            "oval_zero_counts": list(self.oval_zero_counts),
            "n_S": self.n_S,
        }


def check_reality(q: QuadDifferential) -> bool:
    """Whether the zero divisor is preserved by the involution on the z-line."""
    bag = Counter(q.zeros)
    image = (lambda a: a.antipode()) if q.kind.is_antipodal else (lambda a: a.conjugate())
    return all(bag.get(image(a), 0) == m for a, m in bag.items())


def _check_simple(q: QuadDifferential) -> None:
    if len(set(q.zeros)) != len(q.zeros):
        raise NonSimpleZeros("repeated zero of q")
    for a in q.zeros:
        if q.curve.is_branch_point(a):
            raise NonSimpleZeros(f"zero {a} is a branch point")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _q_sign_on_arc(q: QuadDifferential, P: RealPolynomial, arc: SignInterval) -> int:
    """Sign of ``sign * P / p`` on a zero-free arc, evaluated exactly at the arc sample."""
    x = arc.sample
    return q.sign * _sign(P(x)) * _sign(q.curve.p(x))


def analyze(q: QuadDifferential) -> SpectralInvariants:
    """Sign/zero invariants ``(n+, n-, n0, u, n_S)`` of ``q`` over the fixed circles.

    A zero ``a`` lies on a fixed circle exactly when it is real (or infinite)
    and sits in an arc fixed by the involution; the two points of
    ``z^-1(a)`` then both lie on that circle when it double covers its arc,
    and one on each circle in the split odd-genus case. Real zeros over
    non-fixed arcs have their two preimages exchanged and contribute nothing.
    """
    if not check_reality(q):
        raise RealityViolation("zeros of q are not preserved by the involution")
    _check_simple(q)
    curve = q.curve
    g = curve.g
    if q.kind.is_antipodal:
        return SpectralInvariants(0, 0, 0, 0, 0, (), 0, g)

    ovs = ovals(curve, q.kind)
    per_arc = Counter()
    for a in q.zeros:
        if isinstance(a, Infinity):
            per_arc[curve.arc_index(INF)] += 1
        elif a.is_real:
            per_arc[curve.arc_index(a.re)] += 1
    P = q.numerator()

    counts, signs = [], []
    n_plus = n_minus = 0
    for ov in ovs:
        c = ov.covering * per_arc.get(ov.arc_index, 0)
        counts.append(c)
        if c:
            signs.append(0)
            continue
        s = _q_sign_on_arc(q, P, ov.arc)
        signs.append(s)
        if s > 0:
            n_plus += 1
        else:
            n_minus += 1
    u = sum(counts)
    return SpectralInvariants(
        n=len(ovs),
        n_plus=n_plus,
        n_minus=n_minus,
        n_zero=n_plus + n_minus,
        u=u,
        oval_zero_counts=tuple(counts),
        n_S=2 * n_plus + u // 2,
        g=g,
        oval_signs=tuple(signs),
    )


def spectral_genus(n: int, g: int) -> int:
    """Genus of a smooth rank-``n`` spectral curve over a genus-``g`` surface."""
    _check_ng(n, g)
    return 1 + n * n * (g - 1)


def fixed_degree(n: int, g: int) -> int:
    """The only degree of line bundles on the spectral curve that the reality involution can fix."""
    _check_ng(n, g)
    return n * (n - 1) * (g - 1)


def fibre_dim(group: str, n: int, g: int) -> int:
    """Real dimension of the torus part of a generic real fibre."""
    _check_ng(n, g)
    group = group.upper()
    if group == "GL":
        return 1 + n * n * (g - 1)
    if group == "SL":
        return (n * n - 1) * (g - 1)
    raise ValueError(f"unsupported group {group!r}")


def _check_ng(n: int, g: int) -> None:
    if n < 1 or g < 2:
        raise ValueError("need n >= 1 and g >= 2")
