"""Smoke tests for the shardsec extension module."""

import json
import math
import os
from fractions import Fraction

import pytest

import shardsec

REF1 = {
    "label": "ref1",
    "N": 1000,
    "K": 800,
    "M": 200,
    "M_sel": 200,
    "n": 100,
    "r": "0.333",
    "R": "0.20",
    "N_s": 365,
}


def test_validate_populates_derived_fields():
    params = shardsec.validate(REF1)
    assert params.committee_count == 8
    assert params.Lambda == 1199
    assert params.committee_capacity == 33
    assert params.r == Fraction(333, 1000)
    assert params.R == Fraction(1, 5)


def test_validate_rejects_bad_scenarios():
    bad = dict(REF1, M_sel=300)
    with pytest.raises(shardsec.ValidationError, match="M_sel exceeds M"):
        shardsec.validate(bad)


def test_binomial_matches_math_comb():
    assert shardsec.binomial(5, 2) == 10
    assert shardsec.binomial(800, 200) == math.comb(800, 200)
    assert shardsec.binomial(10, 11) == 0


def test_hypergeometric_against_python_fractions():
    # small enough to recompute directly
    expected = Fraction(math.comb(2, 1) * math.comb(3, 1), math.comb(5, 2))
    assert shardsec.hypergeom_pmf(5, 2, 2, 1).as_fraction() == expected
    tail = sum(
        Fraction(math.comb(200, s) * math.comb(999, 800 - s), math.comb(1199, 800))
        for s in range(161, 201)
    )
    got = shardsec.hypergeom_tail(1199, 200, 800, 161)
    assert got.as_fraction() == tail
    assert got.scientific() == "2.04e-06"


def test_takeover_probability():
    params = shardsec.validate(REF1)
    takeover = shardsec.pgfa_failure_prob(params)
    assert takeover.scientific() == "1.56e-01"
    assert shardsec.pgfa_from_counts(2, 4, 2, 2) == shardsec.jhda_from_counts(2, 4, 2, 2)
    assert float(shardsec.jhda_from_counts(2, 4, 2, 2)) == 0.0


def test_enumeration_budget_is_enforced():
    params = shardsec.validate(REF1)
    with pytest.raises(shardsec.BudgetExceeded):
        shardsec.jhda_exact(params)


def test_analyze_report():
    report = shardsec.analyze(REF1)
    assert report["P"] == "2.04e-06"
    assert report["P_prime"] == "1.56e-01"
    assert report["P_double_prime"] == "3.18e-07"
    assert report["A"] == "8623.62"
    assert report["secure"] is True
    assert report["params"]["lambda"] == 8
    # serializable
    json.dumps(report)


def test_years_to_fail():
    params = shardsec.validate(REF1)
    attack = shardsec.successful_attack_prob(
        params, shardsec.pool_breach_threshold(params)
    )
    years = shardsec.years_to_fail(attack, 365)
    assert isinstance(years, Fraction)
    assert abs(float(years) - 8623.61) / 8623.61 < 0.005
    assert shardsec.years_to_fail(attack.complement().complement(), 365) == years
    zero = shardsec.hypergeom_tail(10, 2, 2, 3)  # impossible draw
    assert shardsec.years_to_fail(zero, 365) == float("inf")


def test_bcp_comparator_can_exceed_one():
    scenario = dict(REF1, M=200, M_sel=200, r="0.25", R="0.10")
    assert shardsec.bcp_comparator(shardsec.validate(scenario)) > 1


def test_simulation_is_seed_deterministic():
    scenario = dict(REF1, N=30, K=8, M=5, M_sel=4, n=4, r="0.5", R="0.25")
    params = shardsec.validate(scenario)
    first = shardsec.simulate_epochs(params, 2000, 3, seed=9)
    second = shardsec.simulate_epochs(params, 2000, 3, seed=9)
    assert first == second
    assert first["generator"] == "mt19937_64"
    assert first["epochs"] == 2000
    trials = shardsec.jhda_trials(params, 5000, seed=9)
    assert trials["failures"] == shardsec.jhda_trials(params, 5000, seed=9)["failures"]


def test_scenario_files_agree_with_inline_dicts():
    scenario_dir = os.environ.get("SHARDSEC_SCENARIO_DIR")
    if not scenario_dir:
        pytest.skip("scenario directory not provided")
    with open(os.path.join(scenario_dir, "ref1.json")) as fh:
        scenario = json.load(fh)
    scenario["r"] = str(scenario["r"])
    scenario["R"] = str(scenario["R"])
    assert shardsec.analyze(scenario)["P_double_prime"] == "3.18e-07"
