import random

import pytest
from hypothesis import assume, given, settings, strategies as st

import realhitchin.monodromy as mono
from realhitchin.census import random_configuration
from realhitchin.curve import build_curve
from realhitchin.errors import NonSimpleZeros, SampleDegeneracy
from realhitchin.monodromy import count_nS_oracle, numeric_fixed_arcs, oracle_traces, track_fixed_circles
from realhitchin.spectral import QuadDifferential, analyze, ovals

WORKED = "(z^2-1)(z^2-4)(z^2-9)"


@pytest.fixture(scope="module")
def worked():
    return build_curve(WORKED)


def test_per_oval_counts(worked):
    q = QuadDifferential.from_pair(worked, "3/2", "-3/2")
    got = {o.describe(worked): track_fixed_circles(q, o) for o in ovals(worked)}
    assert got == {"[-2, -1]": 1, "[1, 2]": 1, "[3, inf, -3]": 2}
    assert count_nS_oracle(q) == 4


def test_negative_oval_has_no_circles(worked):
    q = QuadDifferential.from_pair(worked, "i", "-i", sign=-1)
    assert [track_fixed_circles(q, o) for o in ovals(worked)] == [0, 0, 0]
    assert count_nS_oracle(QuadDifferential.from_pair(worked, "i", "-i")) == 6


def test_no_fixed_set():
    c = build_curve("-(z^2+1)(z^2+4)(z^2+9)")
    q = QuadDifferential.from_pair(c, "1", "2")
    assert numeric_fixed_arcs(q) == [] and count_nS_oracle(q) == 0


def test_whole_line_even_genus():
    c = build_curve("(z^2+1)(z^2+4)(z^2+9)")
    (path,) = numeric_fixed_arcs(QuadDifferential.from_pair(c, "5i", "-5i"))
    assert path.kind == "line" and path.length > 6  # one loop over two turns
    assert count_nS_oracle(QuadDifferential.from_pair(c, "5i", "-5i")) == 2
    assert count_nS_oracle(QuadDifferential.from_pair(c, "1", "2")) == 2  # two zeros on one loop


def test_whole_line_odd_genus_splits():
    c = build_curve(["i", "-i", "2i", "-2i", "3i", "-3i", "1+i", "1-i"])
    q = QuadDifferential(c, ("1/2+i", "1/2-i", "1/3+i", "1/3-i"))
    assert len(numeric_fixed_arcs(q)) == 2
    assert [track_fixed_circles(q, o) for o in ovals(c)] == [2, 2]
    q = QuadDifferential(c, ("1", "2", "3", "4"))
    assert [track_fixed_circles(q, o) for o in ovals(c)] == [2, 2]
    assert count_nS_oracle(q) == analyze(q).n_S == 4


def test_traces_record_gluing(worked):
    traces = oracle_traces(QuadDifferential.from_pair(worked, "3/2", "-3/2"))
    assert sorted(t.circles for t in traces) == [1, 1, 2]
    for t in traces:
        doc = t.to_dict()
        assert doc["samples_per_segment"] >= mono.MIN_SAMPLES
        signs = [s["sign"] for s in doc["segments"]]
        assert len(doc["glue_points"]) == sum(1 for a, b in zip(signs, signs[1:] + signs[:1]) if a != b)


def test_degenerate_sampling_raises(worked, monkeypatch):
    monkeypatch.setattr(mono, "ZERO_TOL", 10.0)
    with pytest.raises(SampleDegeneracy):
        count_nS_oracle(QuadDifferential.from_pair(worked, "3/2", "-3/2"))


def test_antipodal_has_no_circles():
    c = build_curve(["2", "-1/2", "2i", "-2i", "1/2i", "-1/2i", "i", "-i"])
    q = QuadDifferential(c, ("inf", "0", "3i", "-1/3i"), kind="AntipodalH")
    assert count_nS_oracle(q) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_oracle_matches_sign_analysis(g, seed):
    q = random_configuration(g, random.Random(seed)).build()
    try:
        sp = analyze(q)
    except NonSimpleZeros:
        assume(False)
    assert count_nS_oracle(q) == sp.n_S
    for o, zeros, sign in zip(ovals(q.curve, q.kind), sp.oval_zero_counts, sp.oval_signs):
        got = track_fixed_circles(q, o)
        if zeros:
            assert got == zeros // 2
        else:
            assert got == (0 if sign < 0 else 2)
