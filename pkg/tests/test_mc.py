import random
from fractions import Fraction as F

import numpy as np
import pytest

from lcross import (
    InvalidDistribution,
    StepSampler,
    WalkSpec,
    cauchy,
    crossing_prob,
    expected_sign_changes,
    factorial_dominance_stats,
    factorial_heavy,
    from_dist,
    gaussian,
    make_dist,
    mc_crossing,
    mc_sign_changes,
    mc_top_two_tie,
    point_mass,
    rademacher,
    seeded_stream,
)
from helpers import random_dist


def within_three_sigma(est, exact):
    return abs(est.mean - float(exact)) <= est.half_width_95 * 3 / 1.96


def test_seeded_stream_contract():
    a = seeded_stream(42, 0).random(1000)
    b = seeded_stream(42, 0).random(1000)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, seeded_stream(42, 1).random(1000))
    assert not np.array_equal(a, seeded_stream(43, 0).random(1000))
    for bad in (-1, 2**64, "x"):
        with pytest.raises(ValueError):
            seeded_stream(bad)
        with pytest.raises(ValueError):
            seeded_stream(0, bad)


def test_sampler_validation():
    with pytest.raises(ValueError):
        StepSampler("weird")
    with pytest.raises(InvalidDistribution):
        StepSampler("from_dist")
    with pytest.raises(ValueError):
        gaussian(sd=0)
    with pytest.raises(ValueError):
        cauchy(scale=0)
    with pytest.raises(ValueError):
        factorial_heavy(1)
    with pytest.raises(ValueError):
        factorial_heavy(2.5)
    assert from_dist(rademacher()).describe() == {"kind": "from_dist", "atoms": 2}
    assert gaussian(1, 2).describe() == {"kind": "gaussian", "mean": 1.0, "sd": 2.0}
    assert factorial_heavy(8).describe() == {"kind": "factorial_heavy", "trunc": 8}


def test_estimator_input_validation():
    r = from_dist(rademacher())
    for call in (
        lambda: mc_crossing(r, 3, 0, 99, 0),
        lambda: mc_crossing(r, 0, 0, 1000, 0),
        lambda: mc_sign_changes(r, 0, 1000, 0),
        lambda: mc_sign_changes(r, 4, 99, 0),
        lambda: mc_top_two_tie(r, 1, 1000, 0),
        lambda: mc_top_two_tie(gaussian(), 2, 1000, 0),
        lambda: factorial_dominance_stats(8, 1, 1000, 0),
    ):
        with pytest.raises(ValueError):
            call()


def test_mc_crossing_worked_examples():
    est = mc_crossing(from_dist(rademacher()), 3, 0, 100_000, 0)
    assert within_three_sigma(est, F(1, 2))
    assert est.estimand == "crossing" and est.samples == 100_000 and est.seed == 0
    est = mc_crossing(from_dist(point_mass(0)), 5, 0, 1000, 1)
    assert est.mean == 0.0 and est.half_width_95 == 1.0 / 1000
    est = mc_crossing(from_dist(rademacher()), 1, 0, 1000, 2)
    assert est.mean == 1.0


def test_mc_crossing_is_deterministic():
    a = mc_crossing(from_dist(rademacher()), 4, 0, 5000, 7)
    b = mc_crossing(from_dist(rademacher()), 4, 0, 5000, 7)
    assert a == b and a.params == b.params
    c = mc_crossing(from_dist(rademacher()), 4, 0, 5000, 8)
    assert a.mean != c.mean or a.half_width_95 != c.half_width_95


def test_mc_crossing_level_coercions_agree():
    base = mc_crossing(from_dist(lazy_law()), 4, F(1, 2), 4000, 3)
    assert mc_crossing(from_dist(lazy_law()), 4, "1/2", 4000, 3).mean == base.mean
    assert mc_crossing(from_dist(lazy_law()), 4, 0.5, 4000, 3).mean == base.mean


def lazy_law():
    return make_dist([(-1, 1), (0, 2), (1, 1)])


def test_continuous_symmetric_two_step_crossing_is_quarter():
    for sampler in (gaussian(), cauchy()):
        est = mc_crossing(sampler, 2, 0, 100_000, 5)
        assert within_three_sigma(est, F(1, 4))


def test_mc_vs_exact_calibration_random_laws():
    rng = random.Random(55)
    hits = 0
    trials = 30
    for seed in range(trials):
        d = random_dist(rng, 4, span=4, max_den=2)
        n = rng.randint(1, 6)
        level = F(rng.randint(-2, 2), rng.randint(1, 2))
        exact = crossing_prob(WalkSpec(d, level, 8), n)
        est = mc_crossing(from_dist(d), n, level, 20_000, seed)
        if within_three_sigma(est, exact):
            hits += 1
    assert hits >= trials - 1


def test_big_integer_path_matches_vectorized_path():
    huge = make_dist([(-(2**61), 1), (2**61, 1)])
    for seed in (0, 1, 2):
        a = mc_crossing(from_dist(huge), 2, 0, 500, seed)
        b = mc_crossing(from_dist(rademacher()), 2, 0, 500, seed)
        assert a.mean == b.mean
    big3 = make_dist([(-(3**40), 1), (3**40, 1)])
    a = mc_sign_changes(from_dist(big3), 4, 500, 9)
    b = mc_sign_changes(from_dist(rademacher()), 4, 500, 9)
    assert a.mean == b.mean


def test_mc_sign_changes_examples():
    est = mc_sign_changes(from_dist(point_mass(0)), 16, 1000, 0)
    assert est.mean == 0.0 and est.estimand == "sign_changes"
    exact = expected_sign_changes(WalkSpec(rademacher(), 0, 4))
    assert exact == F(19, 8)
    est = mc_sign_changes(from_dist(rademacher()), 4, 50_000, 11)
    assert within_three_sigma(est, exact)


def test_gaussian_sign_change_bound():
    est = mc_sign_changes(gaussian(), 16, 20_000, 0)
    bound = 2 * sum(k ** -0.5 for k in range(1, 17))
    assert est.mean <= bound + 3 * est.half_width_95


def test_mc_top_two_tie_examples():
    idx_law = make_dist([(1, 1), (2, 1)])
    est = mc_top_two_tie(from_dist(idx_law), 2, 100_000, 0)
    assert within_three_sigma(est, F(1, 2))
    est = mc_top_two_tie(from_dist(idx_law), 3, 100_000, 0)
    assert within_three_sigma(est, F(5, 8))
    assert est.estimand == "top_two_tie"
    est = mc_top_two_tie(factorial_heavy(8), 4, 2000, 1)
    assert 0.0 <= est.mean <= 1.0


def test_half_width_shrinks_with_samples():
    for seed in range(5):
        small = mc_crossing(from_dist(rademacher()), 3, 0, 10_000, seed)
        large = mc_crossing(from_dist(rademacher()), 3, 0, 20_000, seed)
        ratio = small.half_width_95 / large.half_width_95
        assert 2 / 1.5 <= ratio <= 3


def test_factorial_crossing_runs_exact_positions():
    est = mc_crossing(factorial_heavy(16), 8, 0, 2000, 3)
    assert 0.0 <= est.mean <= 1.0
    assert est.params["sampler"] == {"kind": "factorial_heavy", "trunc": 16}
    again = mc_crossing(factorial_heavy(16), 8, 0, 2000, 3)
    assert est == again


def test_factorial_dominance_certificate():
    for trunc, n, seed in ((16, 4, 0), (64, 8, 1)):
        stats = factorial_dominance_stats(trunc, n, 3000, seed)
        assert stats["certified"] <= stats["distinct_top"] <= 3000
        assert stats["certified_sign_ok"] == stats["certified"]
        assert stats["distinct_sign_ok"] <= stats["distinct_top"]
        assert stats == factorial_dominance_stats(trunc, n, 3000, seed)


def test_estimate_json_shape():
    est = mc_crossing(from_dist(rademacher()), 2, 0, 1000, 4)
    doc = est.to_json_dict()
    assert set(doc) == {"estimand", "mean", "half_width_95", "samples", "seed", "params"}
    assert doc["params"]["n"] == 2 and doc["params"]["level"] == "0"
