import random
from fractions import Fraction as F

import pytest

from lcross import (
    NotApplicable,
    ResourceLimit,
    WalkSpec,
    concentration,
    crossing_prob,
    crossing_table,
    dominated_crossing_bound,
    expected_sign_changes,
    lazy,
    make_dist,
    negate,
    point_mass,
    rademacher,
    walk_marginals,
)
from lcross.acceptance import _enum_crossing_probs
from helpers import random_dist, random_symmetric_dist


def test_walk_marginals_worked_examples():
    r = rademacher()
    m = walk_marginals(WalkSpec(step=r, horizon=2))
    assert m[0] == r
    assert m[1].atoms == ((F(-2), F(1, 4)), (F(0), F(1, 2)), (F(2), F(1, 4)))
    m = walk_marginals(WalkSpec(step=point_mass(1), horizon=3))
    assert m == [point_mass(1), point_mass(2), point_mass(3)]
    half = make_dist([(0, 1), (1, 1)])
    m = walk_marginals(WalkSpec(step=half, horizon=2))
    assert m[0] == half
    assert m[1].atoms == ((F(0), F(1, 4)), (F(1), F(1, 2)), (F(2), F(1, 4)))


def test_crossing_prob_worked_examples():
    r = rademacher()
    spec = WalkSpec(step=r, level=F(0), horizon=4)
    assert crossing_prob(spec, 1) == 1
    assert crossing_prob(spec, 2) == F(1, 2)
    assert crossing_prob(spec, 4) == F(3, 8)
    drift = WalkSpec(step=point_mass(1), level=F(1, 2), horizon=2)
    assert crossing_prob(drift, 2) == 0
    with pytest.raises(ValueError):
        crossing_prob(spec, 5)
    with pytest.raises(ValueError):
        crossing_prob(spec, 0)


def test_crossing_table_rademacher():
    report = crossing_table(WalkSpec(step=rademacher(), level=F(0), horizon=4))
    assert [row.p for row in report.rows] == [F(1), F(1, 2), F(1, 2), F(3, 8)]
    assert report.symmetric
    assert report.all_bounds_hold()
    n2 = report.rows[1]
    assert n2.zero_mass == F(1, 2)
    assert n2.lower_bound_ok and n2.chain_bound_ok and n2.domination_ok


def test_crossing_table_degenerate_and_asymmetric():
    report = crossing_table(WalkSpec(step=point_mass(0), level=F(0), horizon=6))
    assert all(row.p == 0 for row in report.rows)
    assert report.all_bounds_hold()
    skew = make_dist([(0, 1), (2, 1)])
    report = crossing_table(WalkSpec(step=skew, level=F(0), horizon=4))
    assert not report.symmetric
    for row in report.rows:
        assert row.lower_bound_ok is None
        assert row.chain_bound_ok is None


def test_crossing_matches_path_enumeration():
    rng = random.Random(21)
    for _ in range(15):
        step = random_dist(rng, 4, span=4, max_den=3)
        level = F(rng.randint(-3, 3), rng.randint(1, 2))
        report = crossing_table(WalkSpec(step=step, level=level, horizon=6))
        oracle = _enum_crossing_probs(step, level, 6)
        assert [row.p for row in report.rows] == oracle


def test_crossing_reflection_invariance():
    rng = random.Random(22)
    for _ in range(15):
        step = random_dist(rng, 4, span=4)
        level = F(rng.randint(-3, 3), rng.randint(1, 2))
        a = crossing_table(WalkSpec(step=step, level=level, horizon=5))
        b = crossing_table(WalkSpec(step=negate(step), level=-level, horizon=5))
        assert [r.p for r in a.rows] == [r.p for r in b.rows]


def test_symmetric_bounds_on_random_laws():
    rng = random.Random(23)
    for _ in range(15):
        step = random_symmetric_dist(rng)
        report = crossing_table(WalkSpec(step=step, level=F(0), horizon=24))
        for row in report.rows:
            assert row.lower_bound_ok
            assert row.chain_bound_ok
            if row.n >= 2:
                assert row.domination_ok


def test_dominated_crossing_bound():
    spec = WalkSpec(step=rademacher(), level=F(0), horizon=4)
    assert dominated_crossing_bound(spec, 2) == 1
    assert dominated_crossing_bound(spec, 3) == F(1, 2)
    assert dominated_crossing_bound(WalkSpec(step=lazy(), horizon=2), 2) == F(3, 4)
    with pytest.raises(NotApplicable):
        dominated_crossing_bound(WalkSpec(step=rademacher(), level=F(1), horizon=4), 2)
    with pytest.raises(ValueError):
        dominated_crossing_bound(spec, 1)


def test_domination_bound_brute_force():
    rng = random.Random(24)
    for _ in range(10):
        step = random_dist(rng, 4, span=3)
        spec = WalkSpec(step=step, level=F(0), horizon=3)
        prev = walk_marginals(spec)[1]
        expected = F(0)
        for s, ws in prev.atoms:
            for x, wx in step.atoms:
                if abs(s) <= abs(x):
                    expected += ws * wx
        assert dominated_crossing_bound(spec, 3) == expected


def test_concentration():
    r = rademacher()
    assert concentration(r, 0) == F(1, 2)
    assert concentration(r, 2) == 1
    d = make_dist([(0, F(1, 4)), (1, F(1, 2)), (5, F(1, 4))])
    assert concentration(d, 1) == F(3, 4)
    with pytest.raises(ValueError):
        concentration(r, -1)


def test_concentration_monotone_and_saturating():
    rng = random.Random(25)
    for _ in range(10):
        d = random_dist(rng, 6)
        widths = [F(k, 2) for k in range(0, 8)]
        values = [concentration(d, w) for w in widths]
        assert all(a <= b for a, b in zip(values, values[1:]))
        diameter = d.values[-1] - d.values[0]
        assert concentration(d, diameter) == 1


def test_expected_sign_changes():
    assert expected_sign_changes(WalkSpec(step=rademacher(), horizon=2)) == F(3, 2)
    assert expected_sign_changes(WalkSpec(step=point_mass(0), horizon=10)) == 0
    assert expected_sign_changes(WalkSpec(step=point_mass(1), horizon=10)) == 1
    with pytest.raises(NotApplicable):
        expected_sign_changes(WalkSpec(step=rademacher(), level=F(1), horizon=4))


def test_walk_spec_validation():
    with pytest.raises(ValueError):
        WalkSpec(step=rademacher(), horizon=0)
    with pytest.raises(ValueError):
        WalkSpec(step=rademacher(), horizon=4, sign_convention="strict")


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("LCROSS_MAX_SUPPORT", "10")
    with pytest.raises(ResourceLimit):
        crossing_table(WalkSpec(step=rademacher(), horizon=64))
    monkeypatch.setenv("LCROSS_MAX_SUPPORT", "banana")
    with pytest.raises(ValueError):
        crossing_table(WalkSpec(step=rademacher(), horizon=4))


def test_report_csv_and_json():
    report = crossing_table(WalkSpec(step=rademacher(), level=F(0), horizon=2))
    lines = report.to_csv().strip().splitlines()
    assert lines[0] == "n,p_n,sqrt_n_p_n,P_Sn_eq_0,lower_bound_ok,chain_bound_ok,domination_ok"
    assert lines[1].startswith("1,1,")
    assert lines[2].split(",")[1] == "1/2"
    assert lines[1].endswith("true,true,na")
    doc = report.to_json_dict()
    assert doc["level"] == "0" and doc["horizon"] == 2 and doc["symmetric"]
    assert doc["rows"][1]["p_n"] == "1/2"
    assert doc["rows"][1]["domination_ok"] is True
