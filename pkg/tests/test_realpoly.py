from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from realhitchin.curve import build_curve
from realhitchin.realpoly import (
    INF,
    NonSquareFree,
    Point,
    RealPolynomial,
    count_real_roots,
    find_roots,
    mobius_transform,
    parse_point,
    parse_polynomial,
    real_sign_profile,
    sign_at,
)

WORKED = "(z^2-1)(z^2-4)(z^2-9)"

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_roots_of_factored_inputs():
    r = find_roots(parse_polynomial("z^2-1"))
    assert [x.exact for x in r.real_roots] == [-1, 1] and r.k == 1

    r = find_roots(parse_polynomial(WORKED))
    assert [x.exact for x in r.real_roots] == [-3, -2, -1, 1, 2, 3]
    assert r.k == 3 and not r.complex_pairs

    r = find_roots(parse_polynomial("(z^2+1)(z^2+4)(z^2+9)"))
    assert r.k == 0 and len(r.complex_pairs) == 3
    for pair, im in zip(sorted(r.complex_pairs, key=lambda c: c.center.imag), (1, 2, 3)):
        assert abs(pair.center - im * 1j) <= pair.radius + 1e-12


def test_irrational_roots_are_isolated_to_width():
    p = parse_polynomial("z^2 - 2")
    r = find_roots(p, width=Fraction(1, 2**50))
    assert len(r.real_roots) == 2
    pos = r.real_roots[1]
    assert pos.exact is None
    assert pos.lo * pos.lo < 2 < pos.hi * pos.hi
    assert pos.hi - pos.lo <= Fraction(1, 2**50)


def test_sign_at():
    p = parse_polynomial(WORKED)
    assert sign_at(p, 0) == -1
    assert sign_at(p, 4) == 1
    assert sign_at(p, INF) == 1
    assert sign_at(-p, INF) == -1
    assert sign_at(p, 1) == 0


def test_sign_profile_of_worked_curve():
    prof = real_sign_profile(parse_polynomial(WORKED))
    # (-3,-2) (-2,-1) (-1,1) (1,2) (2,3) and the arc through infinity last
    assert [a.sign for a in prof] == [-1, 1, -1, 1, -1, 1]
    assert [a.contains_infinity for a in prof] == [False] * 5 + [True]


def test_sign_profile_trivial_cases():
    prof = real_sign_profile(parse_polynomial("z^2+1"))
    assert len(prof) == 1 and prof[0].sign == 1 and prof[0].is_full_circle
    prof = real_sign_profile(parse_polynomial("z^2-1"))
    assert [(a.sign, a.contains_infinity) for a in prof] == [(-1, False), (1, True)]


def test_odd_degree_profile_splits_at_infinity():
    prof = real_sign_profile(parse_polynomial("z^3 - z"))
    assert prof[0].contains_infinity and prof[-1].contains_infinity
    assert prof[0].sign == -1 and prof[-1].sign == 1


def test_repeated_root_rejected():
    with pytest.raises(NonSquareFree):
        find_roots(parse_polynomial("(z-1)^2 (z^2+1)(z^2+4)"))
    with pytest.raises(NonSquareFree):
        find_roots(RealPolynomial.from_roots(["1", "1", "i", "-i"]))


def test_from_roots_needs_conjugates():
    with pytest.raises(ValueError):
        RealPolynomial.from_roots(["i", "2"])


@pytest.mark.parametrize(
    "text, expected",
    [
        ("inf", INF),
        ("3/2", Point(Fraction(3, 2))),
        ("-i", Point(Fraction(0), Fraction(-1))),
        ("2i", Point(Fraction(0), Fraction(2))),
        ("1+2i", Point(Fraction(1), Fraction(2))),
        ("0.25", Point(Fraction(1, 4))),
    ],
)
def test_parse_point(text, expected):
    assert parse_point(text) == expected


@given(fracs, fracs)
def test_point_text_roundtrip(re_, im_):
    pt = Point(re_, im_)
    assert parse_point(str(pt)) == pt


@st.composite
def root_lists(draw, max_pairs=3, max_reals=6):
    reals = draw(st.lists(fracs, min_size=0, max_size=max_reals, unique=True))
    pairs = draw(
        st.lists(
            st.tuples(fracs, st.fractions(min_value=Fraction(1, 8), max_value=10, max_denominator=8)),
            max_size=max_pairs,
            unique=True,
        )
    )
    if not reals and not pairs:
        reals = [Fraction(0)]
    pts = [Point(x) for x in reals]
    for re_, im_ in pairs:
        pts += [Point(re_, im_), Point(re_, -im_)]
    return pts


@settings(max_examples=40, deadline=None)
@given(root_lists())
def test_sturm_isolation_recovers_exact_roots(pts):
    hinted = RealPolynomial.from_roots(pts)
    p = RealPolynomial(hinted.coeffs)  # forget the root list
    r = find_roots(p)
    want = sorted(x.re for x in pts if x.is_real)
    assert [x.exact for x in r.real_roots] == want
    assert count_real_roots(p) == len(want)
    assert len(r.complex_pairs) == (len(pts) - len(want)) // 2


@settings(max_examples=40, deadline=None)
@given(root_lists(max_pairs=2, max_reals=4))
def test_sturm_count_matches_numeric_roots(pts):
    p = RealPolynomial(RealPolynomial.from_roots(pts).coeffs)
    numeric = np.roots([float(c) for c in reversed(p.coeffs)])
    scale = max(1.0, max(abs(numeric)))
    n_real = sum(1 for z in numeric if abs(z.imag) < 1e-6 * scale)
    assert count_real_roots(p) == n_real


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2, unique=True), st.lists(fracs, min_size=60, max_size=60))
def test_sign_at_agrees_with_profile(ks, xs):
    # degree 6: two or four real roots plus pairs, sign checked at random rationals
    reals = [Point(Fraction(k)) for k in ks] + [Point(Fraction(1, 3)), Point(Fraction(-7, 2))]
    pts = reals + [Point(Fraction(1), Fraction(2)), Point(Fraction(1), Fraction(-2))]
    curve = build_curve(pts)
    prof = curve.profile
    for x in xs:
        if curve.p(x) == 0:
            continue
        assert sign_at(curve.p, x) == prof[curve.arc_index(x)].sign


def test_mobius_transform_moves_roots():
    p = RealPolynomial.from_roots(["1", "2", "3", "4"])
    q = mobius_transform(p, 0, 1, 1, 0)  # z -> 1/z
    r = find_roots(q)
    assert [x.exact for x in r.real_roots] == [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), 1]
