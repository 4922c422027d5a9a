import random

import pytest
from hypothesis import given, strategies as st

from realhitchin.census import (
    Budget,
    Config,
    InvariantTuple,
    NotFound,
    admissible_tuples,
    census,
    random_configuration,
    realize,
    verify_witness,
)
from realhitchin.klein import validate_invariants

GRID_ONLY = Budget(random=0)


def test_genus_two_has_26_tuples():
    tuples = admissible_tuples(2)
    assert len(tuples) == 26
    assert tuples == sorted(tuples)
    assert InvariantTuple(3, 0, 1, 2) in tuples and InvariantTuple(1, 0, 0, 1) in tuples
    by_pair = {}
    for t in tuples:
        by_pair[(t.n, t.a)] = by_pair.get((t.n, t.a), 0) + 1
    assert by_pair == {(0, 1): 1, (1, 0): 4, (1, 1): 4, (2, 1): 7, (3, 0): 10}


@given(st.integers(2, 6))
def test_tuple_invariants(g):
    tuples = admissible_tuples(g)
    assert len(set(tuples)) == len(tuples)
    for t in tuples:
        assert validate_invariants(g, t.n, t.a)
        assert 0 <= t.n_plus <= t.n and 0 <= t.u_half <= 2 * g - 2
        assert t.u_half == 0 or t.n_plus < t.n
        assert t.n or t.u_half == 0


def test_realize_worked_tuple():
    w = realize((3, 0, 1, 2), 2, GRID_ONLY)
    assert w.tuple == InvariantTuple(3, 0, 1, 2)
    assert all(w.checks.values()) and w.n_S == w.oracle_n_S == 4


def test_realize_fixed_point_free():
    w = realize((0, 1, 0, 0), 2, GRID_ONLY)
    assert w.config.kind.value in ("ConjF", "ConjSigmaF")
    assert all(w.checks.values())


def test_missing_tuple_reports_budget():
    res = realize((1, 0, 0, 1), 2, Budget(random=300))
    assert isinstance(res, NotFound)
    assert res.tried > 300 and res.strategies == ["grid", "random"]


def test_realize_rejects_inadmissible():
    with pytest.raises(ValueError):
        realize((2, 0, 0, 0), 2, GRID_ONLY)


def test_grid_census_genus_two():
    report = census(2, GRID_ONLY, seed=3)
    assert (report["admissible"], report["realized"], report["missing"]) == (26, 25, [[1, 0, 0, 1]])
    assert report["seed"] == 3 and report["budget"]["random"] == 0
    for key, w in report["witnesses"].items():
        assert all(w["checks"].values())
        cfg = Config.from_dict(w["config"])
        assert verify_witness(cfg).tuple.key() == key


def test_witness_of_worked_example():
    cfg = Config.from_dict(
        {"roots": ["-3", "-2", "-1", "1", "2", "3"], "zeros": ["3/2", "-3/2"], "sign": 1, "kind": "ConjF"}
    )
    w = verify_witness(cfg, InvariantTuple(3, 0, 1, 2))
    assert w.checks == {
        "oracle_agrees": True,
        "gl_formulas_agree": True,
        "homology_kernel": True,
        "homology_sl2": True,
    }
    with pytest.raises(AssertionError):
        verify_witness(cfg, InvariantTuple(3, 0, 0, 2))


def test_random_configurations_are_deterministic():
    a = [random_configuration(2, random.Random(7)).to_dict() for _ in range(3)]
    b = [random_configuration(2, random.Random(7)).to_dict() for _ in range(3)]
    assert a == b
    cfg = random_configuration(3, random.Random(1))
    assert len(cfg.roots) == 8 and len(cfg.zeros) == 4


def test_genus_three_exploration_runs():
    report = census(3, Budget(random=200, grid_cap=20), seed=1)
    assert report["admissible"] == len(admissible_tuples(3))
    assert report["realized"] + len(report["missing"]) == report["admissible"]
    assert all(all(w["checks"].values()) for w in report["witnesses"].values())
