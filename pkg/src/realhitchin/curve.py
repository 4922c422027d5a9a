"""Real hyperelliptic curves ``w**2 = p(z)`` and their anti-holomorphic involutions."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import GenusTooSmall, NotConjugationClosed, OddDegree
from .realpoly import (
    DEFAULT_WIDTH,
    INF,
    Infinity,
    Point,
    RealPolynomial,
    RealRoot,
    RootMultiset,
    find_roots,
    parse_point,
    parse_polynomial,
    real_sign_profile,
)


class InvolutionKind(str, enum.Enum):
    """The four anti-holomorphic involutions of a real hyperelliptic curve.

    ``CONJ_F`` is ``(w, z) -> (conj w, conj z)`` and ``CONJ_SIGMA_F`` composes it
    with the sheet swap. The antipodal kinds cover ``z -> -1/conj z`` and only
    exist in odd genus.
    """

    CONJ_F = "ConjF"
    CONJ_SIGMA_F = "ConjSigmaF"
    ANTIPODAL_H = "AntipodalH"
    ANTIPODAL_SIGMA_H = "AntipodalSigmaH"

    @property
    def is_antipodal(self) -> bool:
        return self in (InvolutionKind.ANTIPODAL_H, InvolutionKind.ANTIPODAL_SIGMA_H)

    def swapped(self) -> "InvolutionKind":
        """The same involution seen on ``w**2 = -p`` (via ``w -> i w``)."""
        return {
            InvolutionKind.CONJ_F: InvolutionKind.CONJ_SIGMA_F,
            InvolutionKind.CONJ_SIGMA_F: InvolutionKind.CONJ_F,
        }.get(self, self)

    @property
    def fixed_sign(self) -> int:
        """Sign of ``p`` on the real points fixed by this involution (conjugation kinds)."""
        if self is InvolutionKind.CONJ_F:
            return 1
        if self is InvolutionKind.CONJ_SIGMA_F:
            return -1
        raise ValueError("antipodal involutions have no fixed points")

    @classmethod
    def parse(cls, text: Union[str, "InvolutionKind"]) -> "InvolutionKind":
        if isinstance(text, cls):
            return text
        norm = str(text).replace("_", "").replace("-", "").lower()
        for kind in cls:
            if kind.value.lower() == norm or kind.name.replace("_", "").lower() == norm:
                return kind
        raise ValueError(f"unknown involution kind {text!r}")


@dataclass(frozen=True)
class HyperellipticCurve:
    p: RealPolynomial
    g: int
    roots: RootMultiset = field(repr=False)

    @property
    def k(self) -> int:
        return self.roots.k

    @property
    def degree(self) -> int:
        return self.p.degree

    @cached_property
    def profile(self) -> list:
        return real_sign_profile(self.p, self.roots)

    def roots_below(self, x: Fraction) -> int:
        """Number of real roots strictly below ``x``; ``x`` must not be a root."""
        count = 0
        for r in self.roots.real_roots:
            while True:
                if r.hi < x:
                    count += 1
                    break
                if r.lo > x:
                    break
                if r.exact is not None:
                    # x == r.exact; caller promised otherwise
                    raise ValueError("point is a branch point")
                r = _bisect_root(self.p, r)
        return count

    def arc_index(self, x: Union[Fraction, Infinity]) -> int:
        """Index into :attr:`profile` of the arc containing the real point ``x``."""
        n = self.roots.n_real
        if n == 0:
            return 0
        if isinstance(x, Infinity):
            return n - 1
        c = self.roots_below(Fraction(x))
        if c == 0 or c == n:
            return n - 1
        return c - 1

    def is_branch_point(self, a) -> bool:
        a = parse_point(a)
        if isinstance(a, Infinity):
            return False
        if a.is_real:
            return self.p(a.re) == 0
        re_, im_ = _eval_gaussian(self.p.coeffs, a.re, a.im)
        return re_ == 0 and im_ == 0

    def to_dict(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.p.coeffs],
            "degree": self.degree,
            "g": self.g,
            "k": self.k,
            "real_roots": [
                str(r.exact) if r.exact is not None else [str(r.lo), str(r.hi)]
                for r in self.roots.real_roots
            ],
            "complex_pairs": [
                str(c.exact) if c.exact is not None else [repr(c.center.real), repr(c.center.imag)]
                for c in self.roots.complex_pairs
            ],
        }


def _bisect_root(p: RealPolynomial, r: RealRoot) -> RealRoot:
    mid = (r.lo + r.hi) / 2
    v = p(mid)
    if v == 0:
        return RealRoot(mid, mid)
    lo_sign = p(r.lo) > 0
    if (v > 0) != lo_sign:
        return RealRoot(r.lo, mid)
    return RealRoot(mid, r.hi)


def _eval_gaussian(coeffs, re_: Fraction, im_: Fraction):
    """Exact value of a real polynomial at ``re_ + i*im_``."""
    acc_r, acc_i = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        acc_r, acc_i = acc_r * re_ - acc_i * im_ + c, acc_r * im_ + acc_i * re_
    return acc_r, acc_i


def _check_closed(points: list) -> None:
    bag = Counter(points)
    for pt, mult in bag.items():
        if bag.get(pt.conjugate(), 0) != mult:
            raise NotConjugationClosed(f"root {pt} has no conjugate partner")


def build_curve(
    p: Union[RealPolynomial, str, Iterable],
    width: Fraction = DEFAULT_WIDTH,
    leading: Fraction = Fraction(1),
) -> HyperellipticCurve:
    """Validate ``w**2 = p(z)`` and certify its branch points.

    ``p`` may be a :class:`RealPolynomial`, a text polynomial, or an iterable
    of roots (``leading`` then scales the product).
    """
    if isinstance(p, str):
        p = parse_polynomial(p)
    elif not isinstance(p, RealPolynomial):
        pts = [parse_point(r) for r in p]
        if any(isinstance(r, Infinity) for r in pts):
            raise OddDegree("infinity listed as a branch point")
        _check_closed(pts)
        p = RealPolynomial.from_roots(pts, leading=leading)
    if p.degree % 2:
        raise OddDegree(f"degree {p.degree} is odd: infinity is a branch point")
    g = p.degree // 2 - 1
    if g < 2:
        raise GenusTooSmall(f"genus {g} < 2")
    roots = find_roots(p, width)
    return HyperellipticCurve(p, g, roots)


def roots_closed_under_antipode(curve: HyperellipticCurve) -> bool:
    """Whether the branch points are permuted by ``z -> -1/conj z``.

    For real ``p`` this is the same as ``z**d * p(-1/z)`` being proportional
    to ``p``, which is checked exactly.
    """
    d = curve.degree
    c = curve.p.coeffs
    flipped = [(-1) ** i * c[i] for i in range(d + 1)]
    flipped = list(reversed(flipped))  # coefficient of z^(d-i)
    ratio = None
    for x, y in zip(flipped, c):
        if (x == 0) != (y == 0):
            return False
        if y != 0:
            r = x / y
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True


__all__ = [
    "HyperellipticCurve",
    "InvolutionKind",
    "build_curve",
    "roots_closed_under_antipode",
]
