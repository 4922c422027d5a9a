import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from realhitchin.census import random_configuration
from realhitchin.curve import build_curve
from realhitchin.errors import GenusTooSmall, NonSimpleZeros, NotConjugationClosed, OddDegree, RealityViolation
from realhitchin.realpoly import INF, Infinity, Point, RealPolynomial, mobius_transform
from realhitchin.spectral import (
    QuadDifferential,
    analyze,
    check_reality,
    fibre_dim,
    fixed_degree,
    ovals,
    spectral_genus,
)

WORKED = "(z^2-1)(z^2-4)(z^2-9)"


@pytest.fixture(scope="module")
def worked():
    return build_curve(WORKED)


def test_build_curve(worked):
    assert (worked.g, worked.k) == (2, 3)
    with pytest.raises(OddDegree):
        build_curve("z^5 - 1")
    with pytest.raises(GenusTooSmall):
        build_curve("z^4 - 1")


def test_not_closed_example_from_roots():
    with pytest.raises(NotConjugationClosed):
        build_curve(["i", "2i", "-i", "3", "-3", "1+i"])


def test_ovals(worked):
    assert [o.describe(worked) for o in ovals(worked)] == ["[-2, -1]", "[1, 2]", "[3, inf, -3]"]
    k0 = build_curve("(z^2+1)(z^2+4)(z^2+9)")
    (o,) = ovals(k0)
    assert o.is_full_circle and o.covering == 2
    assert ovals(build_curve("-(z^2+1)(z^2+4)(z^2+9)")) == []
    # odd genus, no real roots: two circles over the whole line
    k0g3 = build_curve(["i", "-i", "2i", "-2i", "3i", "-3i", "4i", "-4i"])
    assert [o.covering for o in ovals(k0g3)] == [1, 1]


def test_reality(worked):
    assert check_reality(QuadDifferential.from_pair(worked, "3/2", "-3/2"))
    assert check_reality(QuadDifferential.from_pair(worked, "i", "-i"))
    assert not check_reality(QuadDifferential.from_pair(worked, "i", "2i"))
    with pytest.raises(RealityViolation):
        analyze(QuadDifferential.from_pair(worked, "i", "2i"))


def test_simple_zeros_required(worked):
    with pytest.raises(NonSimpleZeros):
        analyze(QuadDifferential.from_pair(worked, "1", "-3/2"))
    with pytest.raises(NonSimpleZeros):
        analyze(QuadDifferential.from_pair(worked, "3/2", "3/2"))


def test_worked_example(worked):
    sp = analyze(QuadDifferential.from_pair(worked, "3/2", "-3/2"))
    assert (sp.n_plus, sp.n_minus, sp.n_zero, sp.u) == (1, 0, 1, 4)
    assert sp.oval_zero_counts == (2, 2, 0) and sp.n_S == 4

    sp = analyze(QuadDifferential.from_pair(worked, "i", "-i"))
    assert (sp.n_plus, sp.n_minus, sp.n_zero, sp.u, sp.n_S) == (3, 0, 3, 0, 6)


def test_no_ovals_gives_zero():
    c = build_curve("-(z^2+1)(z^2+4)(z^2+9)")
    sp = analyze(QuadDifferential.from_pair(c, "1", "2"))
    assert (sp.n, sp.n_plus, sp.u, sp.n_S) == (0, 0, 0, 0)


def test_zero_at_infinity(worked):
    # q = (z - 3/2) dz^2 / w^2: one zero on [1, 2], the other at infinity on the wrap-around oval
    sp = analyze(QuadDifferential.from_pair(worked, "3/2", "inf"))
    assert sp.oval_zero_counts == (0, 2, 2)
    assert (sp.n_plus, sp.n_minus) == (0, 1)


def test_real_zero_off_the_ovals(worked):
    # 1/2 lies where p < 0: its two preimages are swapped, contributing nothing
    sp = analyze(QuadDifferential.from_pair(worked, "1/2", "-1/2"))
    assert sp.u == 0 and sp.n_zero == 3


@pytest.mark.parametrize("n,g,expected", [(2, 2, 5), (3, 2, 10), (1, 4, 4)])
def test_spectral_genus(n, g, expected):
    assert spectral_genus(n, g) == expected


def test_fixed_degree_and_fibres():
    assert fixed_degree(2, 2) == 2 and fixed_degree(1, 5) == 0 and fixed_degree(3, 2) == 6
    assert fibre_dim("GL", 2, 2) == 5 and fibre_dim("SL", 2, 2) == 3 and fibre_dim("GL", 1, 7) == 7
    with pytest.raises(ValueError):
        fibre_dim("Sp", 2, 2)
    with pytest.raises(ValueError):
        spectral_genus(2, 1)


@given(st.integers(2, 50))
def test_rank_two_spectral_genus_is_odd(g):
    assert spectral_genus(2, g) % 2 == 1


def _valid(config):
    try:
        q = config.build()
        return q, analyze(q)
    except NonSimpleZeros:
        return None


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_constraint_suite(g, seed):
    got = _valid(random_configuration(g, random.Random(seed)))
    assume(got is not None)
    q, sp = got
    assert sp.u % 2 == 0
    assert sp.u // 2 <= 2 * g - 2
    assert sp.n_plus <= sp.n
    assert sp.u == 0 or sp.n_plus < sp.n
    assert sp.n or sp.u == 0
    assert sp.n_plus + sp.n_minus == sp.n_zero
    assert sp.n_zero == sum(1 for c in sp.oval_zero_counts if c == 0)
    assert sp.n_S == 2 * sp.n_plus + sp.u // 2
    assert all(c % 2 == 0 for c in sp.oval_zero_counts)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_sign_flip_swaps_plus_and_minus(g, seed):
    got = _valid(random_configuration(g, random.Random(seed)))
    assume(got is not None)
    q, sp = got
    flipped = analyze(q.negated())
    assert (flipped.n_plus, flipped.n_minus) == (sp.n_minus, sp.n_plus)
    assert flipped.u == sp.u and flipped.oval_zero_counts == sp.oval_zero_counts


# -- Moebius invariance: moving infinity to a finite point must not change anything


def _apply(m, pt):
    """Image of a projective point under z -> (a z + b) / (c z + d), with Gaussian rationals."""
    a, b, c, d = m
    if isinstance(pt, Infinity):
        return INF if c == 0 else Point(Fraction(a, 1) / c)
    nr, ni = a * pt.re + b, a * pt.im
    dr, di = c * pt.re + d, c * pt.im
    den = dr * dr + di * di
    if den == 0:
        return INF
    return Point((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)


def _moved(q, m):
    """Pull ``q`` back along ``z = M(zeta)``; returns the new differential.

    The sign correction comes from ``z - a = det (zeta - b) / ((c zeta + d)(c b + d))``
    for finite ``a = M(b)``; a zero sent to or from infinity contributes
    ``-det / c`` or ``c`` (``d`` when infinity is fixed). Conjugate pairs
    contribute positive products.
    """
    a, b, c, d = m
    det = a * d - b * c
    inv = (d, -b, -c, a)
    sign = q.sign
    zeros = []
    for z in q.zeros:
        w = _apply(inv, z)
        zeros.append(w)
        if isinstance(z, Point) and not z.is_real:
            continue
        if isinstance(z, Infinity):
            factor = Fraction(c if c else d)
        elif isinstance(w, Infinity):
            factor = Fraction(-det, c)
        else:
            factor = Fraction(det) / (c * w.re + d)
        sign *= 1 if factor > 0 else -1
    p2 = mobius_transform(q.curve.p, a, b, c, d, degree=q.curve.degree)
    assume(p2.degree == q.curve.degree)
    curve2 = build_curve(RealPolynomial(p2.coeffs))
    return QuadDifferential(curve2, tuple(zeros), sign, q.kind)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([("3/2", "-3/2"), ("3/2", "inf"), ("i", "-i"), ("5", "inf"), ("1/2", "5/2"), ("-5/2", "inf")]),
    st.sampled_from([1, -1]),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
)
def test_moebius_invariance(pair, sign, m):
    a, b, c, d = m
    assume(a * d - b * c != 0)
    q = QuadDifferential.from_pair(build_curve(WORKED), *pair, sign=sign)
    q2 = _moved(q, m)
    assume(not any(q2.curve.is_branch_point(z) for z in q2.zeros))
    s1, s2 = analyze(q), analyze(q2)
    assert (s2.n, s2.n_plus, s2.n_minus, s2.u, s2.n_S) == (s1.n, s1.n_plus, s1.n_minus, s1.u, s1.n_S)
