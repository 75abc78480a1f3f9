from __future__ import annotations

import math

import pytest

from avdcolor.errors import DomainError
from avdcolor.generators import gnp, regular
from avdcolor.montecarlo import (
    binomial_membership,
    clopper_pearson,
    estimate,
    monte_carlo_phase1,
    phase1_bounds,
)
from avdcolor.pipeline import PipelineParams


def test_clopper_pearson_zero_count():
    lo, hi = clopper_pearson(0, 1000)
    assert lo == 0.0
    # the rule-of-three neighbourhood: 1 - 0.025^(1/n)
    assert hi == pytest.approx(1 - 0.025 ** (1 / 1000), rel=1e-9)


def test_clopper_pearson_brackets_estimate():
    lo, hi = clopper_pearson(7, 200)
    assert lo < 7 / 200 < hi


def test_estimate_fields():
    ev = estimate("R", 5, 100, 0.1)
    assert ev.empirical == 0.05
    assert ev.stderr == pytest.approx(math.sqrt(0.05 * 0.95 / 100))
    assert ev.interval is not None
    assert ev.within_bound()
    assert estimate("R", 50, 100, 0.1).interval is None
    assert not estimate("R", 50, 100, 0.1).within_bound()
    assert estimate("N", 3, 10, None).within_bound() is None


def test_zero_uncolour_probability():
    g = regular(40, 10, seed=1)
    params = PipelineParams.desk(10).with_overrides(uncolor_numerator=0.0)
    rep = monte_carlo_phase1(g, params, trials=5, seed=1)
    assert rep.events["R"].empirical == 0.0
    assert rep.events["T"].empirical == 0.0
    assert rep.events["Q"].empirical == 1.0


def test_desk_profile_frequencies_under_bounds():
    g = regular(200, 20, seed=1)
    rep = monte_carlo_phase1(g, PipelineParams.desk(20), trials=100, seed=3)
    assert rep.violations() == []
    assert rep.events["R"].samples == 100 * 200
    assert sum(rep.neighbourhood_histogram.values()) == 100 * 200
    for ev in rep.events.values():
        assert 0.0 <= ev.empirical <= 1.0


def test_gnp_frequencies_under_bounds():
    g = gnp(150, 0.2, seed=4)
    rep = monte_carlo_phase1(g, PipelineParams.desk(g.max_degree), trials=60, seed=8)
    assert rep.violations() == []


def test_mc_reproducible():
    g = regular(60, 12, seed=2)
    a = monte_carlo_phase1(g, PipelineParams.desk(12), trials=20, seed=5).to_json()
    b = monte_carlo_phase1(g, PipelineParams.desk(12), trials=20, seed=5).to_json()
    assert a == b


def test_trials_must_be_positive():
    with pytest.raises(DomainError):
        monte_carlo_phase1(regular(10, 3, seed=1), PipelineParams.desk(3), trials=0)


def test_large_constant_bounds():
    b = phase1_bounds(PipelineParams.asymptotic())
    assert b["R"] == pytest.approx(2 * math.exp(-110**2 / 540))
    assert b["Q"] == pytest.approx(2 * math.exp(-40**2 / 180))
    assert b["T"] == pytest.approx(180 * 2 * math.exp(-109**2 / 540))
    assert b["L"] == pytest.approx(b["R"] + b["Q"] + b["T"])


def test_binomial_membership_small_run():
    rep = binomial_membership(delta=10_000, samples=50_000, seed=1)
    assert rep.events["R"].empirical <= 1 / 1000
    assert rep.violations() == []


def test_binomial_detects_a_common_event():
    # rho just above the mean makes R common, and the empirical rate should show it
    params = PipelineParams.asymptotic().with_overrides(recovery_threshold=185)
    rep = binomial_membership(delta=10_000, samples=20_000, seed=2, params=params)
    assert rep.events["R"].empirical > 0.2
    assert rep.violations() == []
