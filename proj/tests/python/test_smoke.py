"""Smoke tests for the _hzlab python module (import path set by the build)."""

import math

import pytest

import _hzlab as hz


def test_version_string():
    assert isinstance(hz.__version__, str) and hz.__version__


def test_zeta_critical_vanishes_at_first_unit_shift_zero():
    # alpha = 1 reduces to the classical zeta; 14.134725 is its first
    # critical-line zero to the printed precision.
    z = hz.zeta_critical(14.134725, "1")
    assert abs(z) < 1e-5


def test_hurwitz_zeta_matches_afe_regime():
    em = hz.hurwitz_zeta(complex(0.5, 700.0), "golden")
    afe = hz.hurwitz_afe(700.0, "golden")
    assert afe["main_terms"] > 0 and afe["dual_terms"] > 0
    assert abs(em - afe["value"]) < 1e-3


def test_periodic_zeta_at_integer_shift_is_zeta():
    # lambda = 1 makes every character factor 1.
    p = hz.periodic_zeta(complex(2.0, 0.0), 1.0)
    assert abs(p - (math.pi**2 / 6.0)) < 1e-9


def test_identity_residuals_are_numerical_noise():
    assert hz.functional_equation_residual(complex(0.5, 9.0), "golden") < 1e-10
    assert hz.chi_p_identity_residual(40.0, "sqrt2m1") < 1e-10


def test_continued_fraction_golden():
    cf = hz.continued_fraction("golden")
    assert cf["quotients"][:8] == [0, 1, 1, 1, 1, 1, 1, 1]
    # Convergents of the golden shift are consecutive Fibonacci pairs.
    p, q = cf["convergents"][10]
    assert (p, q) == (55, 89)
    assert cf["mu_hat"] == pytest.approx(2.0, abs=0.1)


def test_continued_fraction_rational_terminates():
    cf = hz.continued_fraction("rational:3/8")
    assert cf["quotients"] == [0, 2, 1, 2]
    assert cf["mu_hat"] is None or cf["mu_hat"] > 0


def test_growth_check_separates_tame_from_synthetic():
    assert hz.growth_check("golden", 0.5)
    assert not hz.growth_check("liouville:3,10", 0.5)


def test_distance_power_sum_linear_for_golden():
    per_n = [hz.distance_power_sum("golden", n, 0.5) / n for n in (10**3, 10**4)]
    assert max(per_n) / min(per_n) < 2.0
    with pytest.raises(Exception):
        hz.distance_power_sum("rational:1/3", 1000, 0.5)


def test_bilinear_sum_within_budget():
    d, x, y = 2, 100, 100
    s = hz.bilinear_exp_sum("sqrt2m1", d, x, y)
    assert abs(s) <= 5.0 * d * (x * y) ** 0.8


def test_moment_integral_second_moment_tracks_prediction():
    m = hz.moment_integral("golden", 500.0, 1.0, "sharp0T")
    pred = hz.second_moment_prediction("golden", 500.0)
    assert m["value"] == pytest.approx(pred, rel=0.05)
    assert m["quad_points"] > 0


def test_conjecture_and_rational_predictions_positive():
    assert hz.conjecture_prediction(1000.0, 2, "smooth") > 0
    assert hz.rational_fourth_prediction(1, 3, 1000.0) > 0
    assert hz.c_alpha("1") == pytest.approx(0.5772156649, abs=1e-9)


def test_distribution_samples_deterministic(tmp_path):
    a = hz.distribution_samples("golden", 1000.0, 50, 7, str(tmp_path))
    b = hz.distribution_samples("golden", 1000.0, 50, 7, str(tmp_path))
    assert a == b
    assert len(a) == 50
    t, re, im = a[0]
    assert 1000.0 <= t <= 2000.0 and math.isfinite(re) and math.isfinite(im)


def test_gaussian_report_fields(tmp_path):
    rep = hz.gaussian_sample_and_test("golden", 1000.0, 200, 7, str(tmp_path))
    assert rep["n_samples"] == 200
    assert 0.0 < rep["ks_modulus"] < 1.0
    assert rep["m1"] > 0

    rerun = hz.gaussian_sample_and_test("golden", 1000.0, 200, 7, str(tmp_path))
    assert rerun["cache_hit"]
    assert rerun["m1"] == rep["m1"]


def test_diagonal_counts():
    assert hz.enumerate_diagonal_count(2, "generic", 10) == 190
    assert hz.enumerate_diagonal_count(2, "generic", 50) == 2 * 50**2 - 50
    assert hz.enumerate_diagonal_count(2, "rational:1/1", 50) > 2 * 50**2 - 50


def test_parametrize_offdiagonal_solves_both_equations():
    tuples = hz.parametrize_offdiagonal(3, -5, 40)
    assert tuples
    for n1, n2, n3, n4 in tuples:
        assert n1 * n2 - n3 * n4 == 3
        assert n1 + n2 - n3 - n4 == -5
        assert 1 <= n4 <= n3 <= 40


def test_offdiag_estimate_small_against_diagonal():
    est = hz.offdiag_oscillatory_estimate("golden", 1000.0)
    diag = hz.diagonal_main_term("golden", math.sqrt(1000.0 / (2 * math.pi)))
    assert abs(est) < diag


def test_shift_spec_errors_raise():
    with pytest.raises(Exception):
        hz.zeta_critical(100.0, "rational:5/0")
    with pytest.raises(Exception):
        hz.moment_integral("golden", 500.0, 1.0, "nonsense-mode")
