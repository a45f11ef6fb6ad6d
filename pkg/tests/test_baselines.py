import itertools
import math

import numpy as np
import pytest

from multiphase.baselines import (
    AsymptoticReport,
    asymptotic_report,
    ie_optimal,
    ie_total_variance,
    psi_s_asymptotic,
    regime_classify,
    se_asymptotic,
    single_phase_bound,
    single_phase_bound_numeric,
)
from multiphase.bounds import cq_matrix, optimize_delta
from multiphase.fock import PureState, build_basis, phase_moments
from multiphase.probes import ie_two_mode


def test_single_phase_bound_lossless():
    assert single_phase_bound(1.0, 1.0, 1.0) == pytest.approx(4.0)
    assert single_phase_bound(2.5, 0.3, 1.0) == pytest.approx(1.2)


def test_single_phase_bound_two_mode_noon_values():
    # m=2 balanced: mean 1, variance 1, eta 0.9 -> C = 3.6
    assert single_phase_bound(1.0, 1.0, 0.9) == pytest.approx(3.6, rel=1e-14)
    # single photon: mean 1/2, variance 1/4 -> C = 2 eta / (1 + eta)
    for eta in (0.3, 0.5, 0.9):
        assert single_phase_bound(0.5, 0.25, eta) == pytest.approx(
            2.0 * eta / (1.0 + eta), rel=1e-14
        )


def test_single_phase_bound_validation():
    with pytest.raises(ValueError):
        single_phase_bound(0.0, 1.0, 0.9)
    with pytest.raises(ValueError):
        single_phase_bound(1.0, -0.1, 0.9)
    with pytest.raises(ValueError):
        single_phase_bound(1.0, 1.0, 0.0)


def test_closed_form_matches_numeric_minimization():
    rng = np.random.default_rng(89)
    for _ in range(15):
        mean = rng.uniform(0.1, 6.0)
        variance = rng.uniform(0.0, 9.0)
        eta = rng.uniform(0.05, 1.0)
        closed = single_phase_bound(mean, variance, eta)
        numeric = single_phase_bound_numeric(mean, variance, eta)
        assert numeric == pytest.approx(closed, rel=1e-8, abs=1e-12)


def test_single_phase_agrees_with_matrix_bound_machinery():
    # d = 1 gauge optimization must land on the closed form
    rng = np.random.default_rng(97)
    for _ in range(5):
        coeffs = rng.uniform(0.0, 1.0, size=4)
        coeffs[0] += 0.2
        coeffs[3] += 0.2
        probe = ie_two_mode(3, coeffs)
        mom = phase_moments(probe)
        mean, var = float(mom.mean[0]), float(mom.covariance[0, 0])
        if var < 1e-9:
            continue
        eta = rng.uniform(0.3, 0.95)
        closed = 1.0 / single_phase_bound(mean, var, eta)
        _, bound = optimize_delta(probe, eta)
        assert bound.trace_inverse == pytest.approx(closed, rel=1e-9)


def brute_force_ie(m, eta, steps=120):
    """Scan occupation distributions of the phase mode on a simplex grid."""
    best = 0.0
    for weights in itertools.product(range(steps + 1), repeat=m):
        total = sum(weights)
        if total > steps:
            continue
        p = np.zeros(m + 1)
        p[1:] = np.array(weights) / steps
        p[0] = 1.0 - total / steps
        mean = float(np.dot(np.arange(m + 1), p))
        if mean <= 0.0:
            continue
        second = float(np.dot(np.arange(m + 1) ** 2, p))
        var = second - mean * mean
        best = max(best, single_phase_bound(mean, var, eta))
    return best


def test_ie_optimal_lossless_is_noon():
    for m in (1, 2, 3, 5):
        result = ie_optimal(m, 1.0)
        assert result.info == pytest.approx(float(m * m), rel=1e-9)
        assert result.per_phase_bound == pytest.approx(1.0 / (m * m), rel=1e-9)
        mom = phase_moments(result.probe)
        assert mom.mean[0] == pytest.approx(m / 2.0, rel=1e-6)


def test_ie_optimal_beats_balanced_noon():
    for m in (1, 2, 3, 4):
        for eta in (0.3, 0.6, 0.9):
            noon_c = single_phase_bound(m / 2.0, m * m / 4.0, eta)
            assert ie_optimal(m, eta).info >= noon_c - 1e-12


def test_ie_optimal_against_simplex_brute_force():
    for m in (1, 2, 3):
        for eta in (0.4, 0.9):
            steps = 90 if m == 3 else 160
            brute = brute_force_ie(m, eta, steps=steps)
            got = ie_optimal(m, eta).info
            assert got >= brute - 1e-9
            assert got == pytest.approx(brute, rel=2e-3)


def test_ie_optimal_m4_dense_grid():
    eta = 0.7
    brute = brute_force_ie(4, eta, steps=40)
    got = ie_optimal(4, eta).info
    assert got >= brute - 1e-9
    assert got == pytest.approx(brute, rel=5e-3)


def test_ie_optimal_probe_consistent_with_info():
    for m, eta in ((2, 0.5), (4, 0.9), (6, 0.8)):
        result = ie_optimal(m, eta)
        mom = phase_moments(result.probe)
        rebuilt = single_phase_bound(
            float(mom.mean[0]), float(mom.covariance[0, 0]), eta
        )
        assert rebuilt == pytest.approx(result.info, rel=1e-9)
        assert result.per_phase_bound == pytest.approx(1.0 / result.info, rel=1e-12)


def test_ie_optimal_diverges_at_heavy_loss():
    assert ie_optimal(3, 1e-6).per_phase_bound > 1e4
    with pytest.raises(ValueError):
        ie_optimal(3, 0.0)
    with pytest.raises(ValueError):
        ie_optimal(0, 0.5)


def test_ie_total_variance_lossless_scaling():
    for d, n in ((2, 4), (3, 6), (4, 8)):
        result = ie_total_variance(d, n, 1.0)
        assert result.total == pytest.approx(d**3 / float(n * n), rel=1e-9)
        assert result.total == pytest.approx(d * result.per_phase_bound, rel=1e-12)
        assert result.m == n // d


def test_ie_total_variance_divisibility():
    with pytest.raises(ValueError):
        ie_total_variance(3, 4, 0.9)
    with pytest.raises(ValueError):
        ie_total_variance(0, 4, 0.9)
    with pytest.raises(ValueError):
        ie_total_variance(2, 0, 0.9)


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(1, total - parts + 2):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def test_equal_split_minimizes_inverse_power_sums():
    for d in (2, 3):
        for n in range(d, 13, d):
            for t in (1, 2):
                uniform = d * (d / n) ** t
                best = min(
                    sum(1.0 / x**t for x in combo)
                    for combo in compositions(n, d)
                )
                assert uniform == pytest.approx(best, rel=1e-12)


def test_se_asymptotic_value_and_scaling():
    assert se_asymptotic(2, 100, 0.9) == pytest.approx(1.11111111e-3, rel=1e-6)
    base = se_asymptotic(2, 100, 0.7)
    assert se_asymptotic(4, 100, 0.7) == pytest.approx(4.0 * base, rel=1e-12)
    assert se_asymptotic(2, 200, 0.7) == pytest.approx(base / 2.0, rel=1e-12)
    with pytest.raises(ValueError):
        se_asymptotic(2, 100, 1.0)
    with pytest.raises(ValueError):
        se_asymptotic(2, 100, 0.0)


def test_se_asymptotic_matches_decoupled_gauge_at_equal_means():
    # with every phase-mode mean at n/d the decoupled-gauge trace is exactly
    # the floor value
    d, n, eta = 3, 30, 0.8
    mean = np.full(d, n / d)
    second = np.diag(mean**2 + 1.0)
    from multiphase.fock import PhaseMoments

    mom = PhaseMoments(mean, second, n)
    bound = cq_matrix(mom, eta, eta / (1.0 - eta))
    assert bound.trace_inverse == pytest.approx(se_asymptotic(d, n, eta), rel=1e-12)


def test_se_asymptotic_is_a_floor_under_photon_budget():
    # sum 1/mean_i >= d^2/N whenever sum mean_i <= N
    rng = np.random.default_rng(101)
    d, eta = 3, 0.75
    for _ in range(20):
        n = int(rng.integers(6, 60))
        mean = rng.uniform(0.05, 1.0, size=d)
        mean *= n / np.sum(mean) * rng.uniform(0.3, 1.0)
        decoupled = float(np.sum((1.0 - eta) / (4.0 * eta) / mean))
        assert decoupled >= se_asymptotic(d, n, eta) - 1e-12


def test_psi_s_asymptotic_identity_and_limits():
    # the closed form collapses to d^2 (kappa n + 1) / (4 n^2)
    for d, n, eta in ((2, 50, 0.9), (3, 400, 0.8), (5, 10**6, 0.99)):
        kappa = (1.0 - eta) / eta
        value, delta = psi_s_asymptotic(d, n, eta)
        assert value == pytest.approx(
            d * d * (kappa * n + 1.0) / (4.0 * n * n), rel=1e-12
        )
        assert delta == pytest.approx((n / eta) / (kappa * n + 1.0) - 1.0, rel=1e-12)
    # lossless limit is the Heisenberg form
    value, _ = psi_s_asymptotic(2, 100, 1.0)
    assert value == pytest.approx(4.0 / 40000.0, rel=1e-12)


def test_psi_s_asymptotic_sql_regime():
    value, _ = psi_s_asymptotic(2, 10**6, 0.9)
    sql = se_asymptotic(2, 10**6, 0.9)
    assert abs(value - sql) / sql < 0.01


def test_psi_s_asymptotic_validation():
    with pytest.raises(ValueError):
        psi_s_asymptotic(0, 10, 0.9)
    with pytest.raises(ValueError):
        psi_s_asymptotic(2, 10, 0.0)


def test_regime_classification():
    assert regime_classify(100, 0.9999) == "heisenberg"
    assert regime_classify(100, 0.5) == "sql"
    assert regime_classify(10, 0.9) == "crossover"
    assert regime_classify(5, 1.0) == "heisenberg"
    with pytest.raises(ValueError):
        regime_classify(0, 0.9)
    with pytest.raises(ValueError):
        regime_classify(10, 0.0)


def test_asymptotic_report_bundle():
    report = asymptotic_report(2, 100, 0.9)
    assert isinstance(report, AsymptoticReport)
    assert report.se_floor == pytest.approx(se_asymptotic(2, 100, 0.9), rel=1e-12)
    assert report.psi_s_value == pytest.approx(
        psi_s_asymptotic(2, 100, 0.9)[0], rel=1e-12
    )
    assert report.regime == regime_classify(100, 0.9)
    assert report.kappa == pytest.approx(1.0 / 9.0, rel=1e-12)
    lossless = asymptotic_report(2, 100, 1.0)
    assert math.isnan(lossless.se_floor)
    assert lossless.regime == "heisenberg"
