"""Real-coefficient polynomials over the projective line.

Coefficients are stored as exact :class:`fractions.Fraction` values, so every
sign decision made here (Sturm counts, signs at sample points, the sign at
infinity) is exact. Floats are accepted on input and converted exactly.

Non-real roots are located numerically with :func:`mpmath.polyroots` and
certified with Weierstrass inclusion disks; real roots are isolated with
Sturm sequences and never depend on the numerical step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath

__all__ = [
    "INF",
    "Infinity",
    "Point",
    "ProjectivePoint",
    "RealPolynomial",
    "RealRoot",
    "ComplexPair",
    "RootMultiset",
    "SignInterval",
    "NonSquareFree",
    "CertificationError",
    "parse_point",
    "parse_polynomial",
    "sturm_sequence",
    "count_real_roots",
    "find_roots",
    "sign_at",
    "real_sign_profile",
    "mobius_transform",
    "DEFAULT_WIDTH",
]

DEFAULT_WIDTH = Fraction(1, 2**40)


class NonSquareFree(ValueError):
    """The polynomial has a repeated root."""


class CertificationError(RuntimeError):
    """Numerical root inclusion could not be certified."""


# ---------------------------------------------------------------------------
# projective points


class Infinity:
    """The point [0, 1] of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_real = True
    is_infinite = True

    def conjugate(self) -> "Infinity":
        return self

    def antipode(self) -> "Point":
        return Point(Fraction(0))

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


@dataclass(frozen=True, order=True)
class Point:
    """A finite point ``re + i*im`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    is_infinite = False

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "Point":
        return Point(self.re, -self.im)

    def antipode(self) -> Union["Point", Infinity]:
        """Image under z -> -1/conj(z)."""
        n = self.re * self.re + self.im * self.im
        if n == 0:
            return INF
        # -1/conj(z) = -z/|z|^2
        return Point(-self.re / n, -self.im / n)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i" if self.im not in (1, -1) else ("i" if self.im > 0 else "-i")
        sgn = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sgn}{'' if mag == 1 else mag}i"


ProjectivePoint = Union[Point, Infinity]


_NUM = r"\d+(?:\.\d+)?(?:/\d+)?"
_PURE_IMAG = re.compile(rf"(?P<sign>[+-]?)(?P<im>{_NUM})?\*?[ij]")
_COMPLEX = re.compile(rf"(?P<re>[+-]?{_NUM})(?P<sign>[+-])(?P<im>{_NUM})?\*?[ij]")


def parse_point(text: Union[str, int, float, Fraction, Point, Infinity]) -> ProjectivePoint:
    """Parse ``"inf"``, ``"3/2"``, ``"-i"``, ``"1+2i"`` and similar literals."""
    if isinstance(text, (Point, Infinity)):
        return text
    if isinstance(text, (int, float, Fraction)):
        return Point(Fraction(text))
    s = str(text).strip().lower().replace(" ", "")
    if s in ("inf", "infinity", "oo", "\u221e"):
        return INF
    m = _PURE_IMAG.fullmatch(s)
    if m:
        im = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        return Point(Fraction(0), -im if m.group("sign") == "-" else im)
    m = _COMPLEX.fullmatch(s)
    if m:
        im = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        return Point(Fraction(m.group("re")), -im if m.group("sign") == "-" else im)
    try:
        return Point(Fraction(s))
    except ValueError:
        raise ValueError(f"cannot parse point {text!r}") from None


# ---------------------------------------------------------------------------
# polynomial arithmetic on coefficient lists (low degree first)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lb
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a.pop()
        _trim(a)
    return _trim(q), _trim(a)


def _gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return a


def _eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealRoot:
    """A real root isolated in ``[lo, hi]``; ``lo == hi`` means the root is exact."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> Optional[Fraction]:
        return self.lo if self.lo == self.hi else None

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class ComplexPair:
    """A conjugate pair, kept by its upper-half-plane member and an inclusion radius."""

    center: complex
    radius: float
    exact: Optional[Point] = None

    @property
    def approx(self) -> complex:
        return self.center


@dataclass(frozen=True)
class RootMultiset:
    real_roots: tuple
    complex_pairs: tuple

    @property
    def k(self) -> int:
        """Half the number of real roots."""
        return len(self.real_roots) // 2

    @property
    def n_real(self) -> int:
        return len(self.real_roots)

    def as_complex(self) -> list:
        out = [complex(r.approx) for r in self.real_roots]
        for c in self.complex_pairs:
            out += [c.center, c.center.conjugate()]
        return out


@dataclass(frozen=True)
class SignInterval:
    """A maximal open arc of the real projective line on which ``p`` has constant sign.

    ``left``/``right`` are indices into the sorted real roots, or ``None`` when
    that end of the arc is infinity (only for odd degree) or when there are no
    real roots at all (the arc is the whole circle).
    """

    left: Optional[int]
    right: Optional[int]
    sign: int
    contains_infinity: bool
    sample: Fraction

    @property
    def is_full_circle(self) -> bool:
        return self.left is None and self.right is None and self.contains_infinity


@dataclass(frozen=True)
class RealPolynomial:
    """``sum(coeffs[i] * z**i)`` with exact rational coefficients."""

    coeffs: tuple
    roots_hint: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        c = _trim([Fraction(x) for x in self.coeffs])
        if not c:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(c))

    # construction -----------------------------------------------------
    @classmethod
    def from_roots(cls, roots: Iterable, leading: Fraction = Fraction(1)) -> "RealPolynomial":
        """Build ``leading * prod(z - r)`` from a conjugation-closed root list.

        Raises ``ValueError`` if the multiset is not closed under conjugation,
        since the product would then have non-real coefficients.
        """
        pts = [parse_point(r) for r in roots]
        if any(isinstance(r, Infinity) for r in pts):
            raise ValueError("infinity cannot be a root of a polynomial")
        pending = list(pts)
        coeffs = [Fraction(leading)]
        while pending:
            r = pending.pop()
            if r.is_real:
                coeffs = _mul(coeffs, [-r.re, Fraction(1)])
                continue
            try:
                pending.remove(r.conjugate())
            except ValueError:
                raise ValueError(f"root {r} has no conjugate partner") from None
            coeffs = _mul(coeffs, [r.re * r.re + r.im * r.im, -2 * r.re, Fraction(1)])
        return cls(tuple(coeffs), roots_hint=tuple(sorted(pts)))

    @classmethod
    def parse(cls, text: str) -> "RealPolynomial":
        return parse_polynomial(text)

    # basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        return _eval(self.coeffs, Fraction(x))

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return _ZERO_DERIV
        return RealPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __neg__(self) -> "RealPolynomial":
        hint = self.roots_hint
        return RealPolynomial(tuple(-c for c in self.coeffs), roots_hint=hint)

    def scaled(self, factor: Fraction) -> "RealPolynomial":
        return RealPolynomial(tuple(c * factor for c in self.coeffs), roots_hint=self.roots_hint)

    def monic_normalized(self) -> "RealPolynomial":
        """Divide by ``|leading|``; the sign of the leading coefficient is kept."""
        return self.scaled(1 / abs(self.leading))

    def reversed_at_infinity(self, degree: Optional[int] = None) -> "RealPolynomial":
        """Coefficients of ``zeta**d * p(1/zeta)`` (the chart at infinity)."""
        d = self.degree if degree is None else degree
        c = list(self.coeffs) + [Fraction(0)] * (d - self.degree)
        return RealPolynomial(tuple(reversed(c)))

    def is_square_free(self) -> bool:
        if self.degree < 2:
            return True
        return len(_gcd(self.coeffs, self.derivative().coeffs)) <= 1

    def to_text(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.to_text()


class _ZeroDeriv:
    coeffs = (Fraction(0),)


_ZERO_DERIV = _ZeroDeriv()


def parse_polynomial(text: str) -> RealPolynomial:
    """Parse a polynomial in ``z`` with rational coefficients.

    Both expanded (``"1 - 2*z + z^2"``) and factored (``"(z^2-1)(z^2-4)"``)
    forms are accepted. A purely factored input whose linear/quadratic factors
    are visible keeps no root hint; use :meth:`RealPolynomial.from_roots` for
    that.
    """
    import sympy

    z = sympy.Symbol("z")
    src = text.replace("^", "**")
    src = re.sub(r"\)\s*\(", ")*(", src)
    src = re.sub(r"(\d)\s*\(", r"\1*(", src)
    src = re.sub(r"(\d)\s*z", r"\1*z", src)
    src = re.sub(r"\)\s*z", r")*z", src)
    expr = sympy.sympify(src, locals={"z": z}, rational=True)
    poly = sympy.Poly(sympy.expand(expr), z)
    coeffs = []
    for c in reversed(poly.all_coeffs()):
        c = sympy.nsimplify(c)
        if not c.is_rational:
            raise ValueError(f"coefficient {c} is not rational")
        coeffs.append(Fraction(int(c.p), int(c.q)))
    return RealPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_sequence(p: RealPolynomial) -> list:
    seq = [list(p.coeffs), list(p.derivative().coeffs)]
    while True:
        _, r = _divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def _variations(values: Iterable[int]) -> int:
    signs = [s for s in values if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_vector(seq, x: Optional[Fraction], at: int = 0) -> list:
    if x is None:
        # at = +1 for +inf, -1 for -inf
        return [_sign(s[-1]) * (at ** (len(s) - 1)) for s in seq]
    return [_sign(_eval(s, x)) for s in seq]


def count_real_roots(
    p: RealPolynomial,
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
    seq=None,
) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means unbounded."""
    if seq is None:
        seq = sturm_sequence(p)
    v_lo = _variations(_sign_vector(seq, lo, -1))
    v_hi = _variations(_sign_vector(seq, hi, +1))
    return v_lo - v_hi


def _cauchy_bound(p: RealPolynomial) -> Fraction:
    lc = abs(p.leading)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _isolate(p: RealPolynomial, seq) -> list:
    """Isolating intervals for the real roots of a square-free p."""
    if p.degree == 0:
        return []
    bound = _cauchy_bound(p)
    out = []
    stack = [(-bound, bound, count_real_roots(p, -bound, bound, seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_leaf(p, seq, lo, hi))
            continue
        mid = (lo + hi) / 2
        left = count_real_roots(p, lo, mid, seq)
        stack.append((lo, mid, left))
        stack.append((mid, hi, n - left))
    out.sort(key=lambda r: r.lo)
    return _separate(p, seq, out)


def _leaf(p, seq, lo, hi) -> RealRoot:
    """Single root in (lo, hi]; return an interval whose endpoints are not roots."""
    if p(hi) == 0:
        return RealRoot(hi, hi)
    if p(lo) != 0:
        return RealRoot(lo, hi)
    j = 10
    while True:
        cand = lo + (hi - lo) / 2**j
        if p(cand) != 0 and count_real_roots(p, cand, hi, seq) == 1:
            return RealRoot(cand, hi)
        j += 1


def _separate(p, seq, roots: list) -> list:
    """Refine neighbouring intervals until their closures are disjoint."""
    roots = list(roots)
    changed = True
    while changed:
        changed = False
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            while a.hi >= b.lo:
                if a.exact is None and a.width() >= b.width():
                    a = _bisect(p, seq, a)
                elif b.exact is None:
                    b = _bisect(p, seq, b)
                else:
                    a = _bisect(p, seq, a)
                changed = True
            roots[i], roots[i + 1] = a, b
    return roots


def _bisect(p: RealPolynomial, seq, r: RealRoot) -> RealRoot:
    if r.exact is not None:
        return r
    mid = (r.lo + r.hi) / 2
    v = p(mid)
    if v == 0:
        return RealRoot(mid, mid)
    if _sign(p(r.lo)) * _sign(v) < 0:
        return RealRoot(r.lo, mid)
    return RealRoot(mid, r.hi)


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in [lo, hi] (Stern-Brocot descent)."""
    fl = lo.numerator // lo.denominator
    if fl == lo or fl + 1 <= hi:
        return Fraction(fl if fl == lo else fl + 1)
    # lo and hi share the integer part; recurse on reciprocals of the fractional parts
    inner = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


def refine_root(p: RealPolynomial, r: RealRoot, width: Fraction = DEFAULT_WIDTH) -> RealRoot:
    """Shrink an isolating interval to ``width``, snapping to a rational root if one exists."""
    while r.exact is None and r.width() > width:
        r = _bisect(p, None, r)
    if r.exact is None:
        cand = _simplest_between(r.lo, r.hi)
        if p(cand) == 0:
            return RealRoot(cand, cand)
    return r


# ---------------------------------------------------------------------------
# complex roots


def _weierstrass_disks(p: RealPolynomial, approx: list, dps: int) -> list:
    n = len(approx)
    lc = mpmath.mpf(p.leading.numerator) / p.leading.denominator
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
    radii = []
    for i, zi in enumerate(approx):
        den = lc
        for j, zj in enumerate(approx):
            if j != i:
                den *= zi - zj
        w = mpmath.polyval(coeffs, zi) / den
        radii.append(n * abs(w))
    return radii


def _complex_roots(p: RealPolynomial, n_real: int) -> tuple:
    if p.degree == n_real:
        return ()
    dps = 40
    for _ in range(4):
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
            try:
                approx = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
            except mpmath.libmp.libhyper.NoConvergence:
                dps *= 2
                continue
            radii = _weierstrass_disks(p, list(approx), dps)
            disjoint = all(
                abs(approx[i] - approx[j]) > radii[i] + radii[j]
                for i in range(len(approx))
                for j in range(i + 1, len(approx))
            )
            if not disjoint:
                dps *= 2
                continue
            upper = [
                (complex(z), float(r))
                for z, r in zip(approx, radii)
                if mpmath.im(z) > r
            ]
            off_axis = sum(1 for z, r in zip(approx, radii) if abs(mpmath.im(z)) > r)
            if len(approx) - off_axis != n_real:
                dps *= 2
                continue
            upper.sort(key=lambda t: (t[0].real, t[0].imag))
            return tuple(ComplexPair(z, r) for z, r in upper)
    raise CertificationError("could not certify the non-real roots")


def find_roots(p: RealPolynomial, width: Fraction = DEFAULT_WIDTH) -> RootMultiset:
    """Isolate all roots of a square-free real polynomial.

    Real roots come from Sturm bisection and are refined to ``width``;
    conjugate pairs are reported by their upper-half-plane member with a
    certified inclusion radius.
    """
    if p.roots_hint is not None:
        # built from an explicit root list: square-free iff the roots are distinct
        if len(set(p.roots_hint)) != len(p.roots_hint):
            raise NonSquareFree("polynomial has a repeated root")
        return _roots_from_hint(p)
    if p.degree >= 1 and not p.is_square_free():
        raise NonSquareFree("polynomial has a repeated root")
    seq = sturm_sequence(p)
    reals = [refine_root(p, r, width) for r in _isolate(p, seq)]
    pairs = _complex_roots(p, len(reals))
    return RootMultiset(tuple(reals), pairs)


def _roots_from_hint(p: RealPolynomial) -> RootMultiset:
    reals = sorted(r.re for r in p.roots_hint if r.is_real)
    uppers = sorted((r for r in p.roots_hint if r.im > 0), key=lambda r: (r.re, r.im))
    return RootMultiset(
        tuple(RealRoot(x, x) for x in reals),
        tuple(ComplexPair(complex(r), 0.0, exact=r) for r in uppers),
    )


# ---------------------------------------------------------------------------
# signs


def sign_at(p: RealPolynomial, x: ProjectivePoint) -> int:
    """Exact sign of ``p`` at a real point or at infinity.

    At infinity the sign is read in the chart ``zeta = 1/z`` with weight
    ``zeta**deg``, i.e. it is the sign of the leading coefficient.
    """
    if isinstance(x, Infinity):
        return _sign(p.leading)
    x = parse_point(x)
    if not x.is_real:
        raise ValueError("sign_at needs a real point or infinity")
    return _sign(p(x.re))


def _gap_sample(a: RealRoot, b: RealRoot) -> Fraction:
    return (a.hi + b.lo) / 2


def real_sign_profile(p: RealPolynomial, roots: Optional[RootMultiset] = None) -> list:
    """Sign-constant arcs of the real projective line, ordered left to right.

    The arc through infinity (if any) comes last. For odd degree the sign
    flips at infinity, so that arc is split into ``(r_max, +inf)`` and
    ``(-inf, r_min)``.
    """
    if roots is None:
        roots = find_roots(p)
    reals = roots.real_roots
    bound = _cauchy_bound(p)
    if reals:
        bound = max(bound, abs(reals[0].lo) + 1, abs(reals[-1].hi) + 1)
    out = []
    if not reals:
        sample = Fraction(0)
        if p.degree % 2 == 0:
            return [SignInterval(None, None, _sign(p(sample)), True, sample)]
        # odd degree always has a real root, unreachable
    for i in range(len(reals) - 1):
        s = _gap_sample(reals[i], reals[i + 1])
        out.append(SignInterval(i, i + 1, _sign(p(s)), False, s))
    last = len(reals) - 1
    if p.degree % 2 == 0:
        s = bound + 1
        out.append(SignInterval(last, 0, _sign(p(s)), True, s))
    else:
        s_hi, s_lo = bound + 1, -bound - 1
        out.append(SignInterval(last, None, _sign(p(s_hi)), True, s_hi))
        out.insert(0, SignInterval(None, 0, _sign(p(s_lo)), True, s_lo))
    return out


def mobius_transform(p: RealPolynomial, a, b, c, d, degree: Optional[int] = None) -> RealPolynomial:
    """``(c z + d)**deg * p((a z + b)/(c z + d))`` for a real invertible matrix.

    ``degree`` defaults to ``p.degree``; pass the even degree 2g+2 explicitly
    when tracking a curve's branch divisor. This is never applied implicitly.
    """
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    if a * d - b * c == 0:
        raise ValueError("singular Moebius matrix")
    n = p.degree if degree is None else degree
    num = [b, a]
    den = [d, c]
    out = [Fraction(0)]
    for i, coef in enumerate(p.coeffs):
        term = [coef]
        for _ in range(i):
            term = _mul(term, num)
        for _ in range(n - i):
            term = _mul(term, den)
        if len(term) > len(out):
            out += [Fraction(0)] * (len(term) - len(out))
        for j, t in enumerate(term):
            out[j] += t
    return RealPolynomial(tuple(out))
