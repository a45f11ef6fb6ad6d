import math

import numpy as np
import pytest

from multiphase.bounds import (
    CqBound,
    DeltaGauge,
    SingularBoundError,
    ab_coefficients,
    bound_total_variance,
    cq_matrix,
    optimize_delta,
)
from multiphase.fock import PhaseMoments, PureState, build_basis, phase_moments
from multiphase.probes import (
    custom_probe,
    generalized_noon,
    generalized_noon_moments,
)
from multiphase.qfi import qfi_pure


def random_real_probe(rng, modes, n):
    basis = build_basis(modes, n)
    amps = rng.standard_normal(basis.size)
    return PureState(basis, amps / np.linalg.norm(amps))


def test_ab_decoupling_choice_zeroes_a():
    for eta in (0.2, 0.5, 0.9):
        a, b = ab_coefficients(eta, eta / (1.0 - eta))
        assert a == pytest.approx(0.0, abs=1e-15)
        assert b == pytest.approx(eta / (1.0 - eta), rel=1e-14)


def test_ab_lossless_and_plain_values():
    assert ab_coefficients(1.0, 0.0) == (1.0, 0.0)
    assert ab_coefficients(1.0, 7.3) == (1.0, 0.0)
    a, b = ab_coefficients(0.9, 0.0)
    assert a == pytest.approx(0.9)
    assert b == pytest.approx(0.09)


def test_ab_validation():
    with pytest.raises(ValueError):
        ab_coefficients(1.5, 0.0)
    with pytest.raises(ValueError):
        ab_coefficients(0.5, math.inf)


def oracle_cq(state, eta_vec, delta_vec):
    # operator route: A_i = a_i n_i, B_ij as second-moment operators,
    # entries 4 (<B_ij> - <A_i><A_j>) evaluated with diagonal matrices
    occ = state.basis.occupations
    psi = state.amplitudes
    d = state.basis.phase_modes
    pairs = [ab_coefficients(e, x) for e, x in zip(eta_vec, delta_vec)]
    n_ops = [np.diag(occ[:, i + 1].astype(float)) for i in range(d)]
    out = np.zeros((d, d))
    for i in range(d):
        a_i, b_i = pairs[i]
        for j in range(d):
            a_j, b_j = pairs[j]
            if i == j:
                b_op = a_i * a_i * n_ops[i] @ n_ops[i] + b_i * n_ops[i]
            else:
                b_op = a_i * a_j * n_ops[i] @ n_ops[j]
            mean_b = np.vdot(psi, b_op @ psi).real
            mean_ai = a_i * np.vdot(psi, n_ops[i] @ psi).real
            mean_aj = a_j * np.vdot(psi, n_ops[j] @ psi).real
            out[i, j] = 4.0 * (mean_b - mean_ai * mean_aj)
    return out


def test_cq_matrix_against_operator_oracle():
    rng = np.random.default_rng(41)
    for _ in range(10):
        state = random_real_probe(rng, 3, 4)
        eta_vec = rng.uniform(0.3, 1.0, size=2)
        delta_vec = rng.uniform(-0.9, 5.0, size=2)
        got = cq_matrix(state, eta_vec, delta_vec).matrix
        want = oracle_cq(state, eta_vec, delta_vec)
        assert np.max(np.abs(got - want)) < 1e-12


def test_cq_matrix_decoupling_gauge_identity():
    rng = np.random.default_rng(43)
    for eta in (0.5, 0.9):
        for _ in range(5):
            state = random_real_probe(rng, 3, 4)
            bound = cq_matrix(state, eta, eta / (1.0 - eta))
            off = bound.matrix - np.diag(np.diag(bound.matrix))
            assert np.max(np.abs(off)) < 1e-12
            mom = phase_moments(state)
            expect = float(np.sum((1.0 - eta) / (4.0 * eta) / mom.mean))
            assert bound.trace_inverse == pytest.approx(expect, rel=1e-12)


def test_cq_matrix_lossless_is_pure_qfi():
    rng = np.random.default_rng(47)
    for _ in range(5):
        state = random_real_probe(rng, 3, 3)
        bound = cq_matrix(state, 1.0, 0.0)
        assert np.max(np.abs(bound.matrix - qfi_pure(state).matrix)) < 1e-12


def test_cq_matrix_generalized_noon_entries():
    # d=2, N=4, eta=1, delta=0: diagonal 4 alpha^2 (1 - alpha^2) N^2,
    # off-diagonal -4 alpha^4 N^2
    bound = cq_matrix(generalized_noon(2, 4), 1.0, 0.0)
    alpha2 = 1.0 / (2.0 + math.sqrt(2.0))
    diag = 4.0 * alpha2 * (1.0 - alpha2) * 16.0
    off = -4.0 * alpha2 * alpha2 * 16.0
    assert bound.matrix[0, 0] == pytest.approx(diag, rel=1e-14)
    assert bound.matrix[1, 1] == pytest.approx(diag, rel=1e-14)
    assert bound.matrix[0, 1] == pytest.approx(off, rel=1e-14)


def test_cq_matrix_accepts_moments_input():
    state = generalized_noon(2, 4)
    via_state = cq_matrix(state, 0.8, 1.3)
    via_moments = cq_matrix(generalized_noon_moments(2, 4), 0.8, 1.3)
    assert np.max(np.abs(via_state.matrix - via_moments.matrix)) < 1e-12
    via_gauge = cq_matrix(state, 0.8, DeltaGauge((1.3, 1.3)))
    assert np.max(np.abs(via_state.matrix - via_gauge.matrix)) == 0.0


def test_cq_matrix_shape_errors():
    state = generalized_noon(2, 4)
    with pytest.raises(ValueError):
        cq_matrix(state, (0.5, 0.5, 0.5), 0.0)
    with pytest.raises(ValueError):
        cq_matrix(state, 0.5, (0.1, 0.2, 0.3))
    with pytest.raises(TypeError):
        cq_matrix("probe", 0.5, 0.0)


def test_cq_matrix_psd_and_symmetric():
    rng = np.random.default_rng(53)
    for _ in range(10):
        state = random_real_probe(rng, 3, 3)
        bound = cq_matrix(state, rng.uniform(0.1, 1.0), rng.uniform(-0.9, 4.0))
        assert np.max(np.abs(bound.matrix - bound.matrix.T)) < 1e-12
        assert np.linalg.eigvalsh(bound.matrix)[0] >= -1e-10


def test_bound_total_variance_diagonal_case():
    mom = PhaseMoments(np.ones(2), np.eye(2) + 1.0, 2)  # covariance = identity
    bound = cq_matrix(mom, 1.0, 0.0)
    assert np.max(np.abs(bound.matrix - 4.0 * np.eye(2))) < 1e-14
    assert bound_total_variance(bound) == pytest.approx(0.5)


def test_bound_total_variance_singular():
    basis = build_basis(3, 4)
    state = custom_probe(basis, [((4, 0, 0), 1.0)])  # photons only in the reference
    bound = cq_matrix(state, 0.9, 0.0)
    assert math.isinf(bound.trace_inverse)
    with pytest.raises(SingularBoundError):
        bound_total_variance(bound)


def test_delta_gauge_validation():
    DeltaGauge((0.0, 2.5))
    with pytest.raises(ValueError):
        DeltaGauge(())
    with pytest.raises(ValueError):
        DeltaGauge((math.nan,))


def test_optimize_delta_dominates_fixed_candidates():
    rng = np.random.default_rng(59)
    for eta in (0.5, 0.9):
        for _ in range(5):
            state = random_real_probe(rng, 3, 4)
            delta_star, best = optimize_delta(state, eta)
            for candidate in (0.0, eta / (1.0 - eta)):
                fixed = cq_matrix(state, eta, candidate)
                assert best.trace_inverse >= fixed.trace_inverse - 1e-10
            assert best.delta.delta == (delta_star,) * 2


def test_optimize_delta_lossless_reduces_to_pure_qfi():
    state = generalized_noon(2, 4)
    delta_star, bound = optimize_delta(state, 1.0)
    assert delta_star == 0.0
    assert bound.trace_inverse == pytest.approx(
        qfi_pure(state).trace_inverse, rel=1e-12
    )


def test_optimize_delta_matches_closed_gauge_at_large_n():
    # moment path at N = 200: the optimizer's gauge should sit within a few
    # percent of the closed large-N expression (N/eta)/(kappa N + 1) - 1
    d, n, eta = 2, 200, 0.9
    delta_star, bound = optimize_delta(generalized_noon_moments(d, n), eta)
    kappa = (1.0 - eta) / eta
    closed = (n / eta) / (kappa * n + 1.0) - 1.0
    assert abs(delta_star - closed) / closed < 0.05
    assert math.isfinite(bound.trace_inverse)


def test_optimize_delta_moments_equal_state_path():
    state = generalized_noon(2, 4)
    from_state = optimize_delta(state, 0.7)
    from_moments = optimize_delta(phase_moments(state), 0.7)
    assert from_state[0] == pytest.approx(from_moments[0], abs=1e-9)
    assert from_state[1].trace_inverse == pytest.approx(
        from_moments[1].trace_inverse, rel=1e-12
    )


def test_optimize_delta_eta_validation():
    state = generalized_noon(2, 4)
    with pytest.raises(ValueError):
        optimize_delta(state, 0.0)
    with pytest.raises(ValueError):
        optimize_delta(state, 1.0001)
    with pytest.raises(ValueError):
        optimize_delta(state, -0.2)


def test_optimize_delta_rejects_dark_phase_mode():
    basis = build_basis(3, 4)
    state = custom_probe(basis, [((0, 4, 0), 1.0), ((4, 0, 0), 1.0)])
    with pytest.raises(SingularBoundError):
        optimize_delta(state, 0.9)  # mode 2 never sees a photon


def test_optimize_delta_rejects_singular_covariance():
    basis = build_basis(3, 2)
    number_eigenstate = custom_probe(basis, [((0, 1, 1), 1.0)])
    with pytest.raises(SingularBoundError):
        optimize_delta(number_eigenstate, 0.9)
    correlated = custom_probe(basis, [((0, 2, 0), 1.0), ((0, 0, 2), 1.0)])
    with pytest.raises(SingularBoundError):
        optimize_delta(correlated, 0.9)  # n_1 + n_2 = 2 in every component


def test_optimize_delta_per_mode_gauges():
    state = generalized_noon(2, 4)
    # symmetric case: the per-mode search may only improve on the scalar one
    delta_vec, bound_vec = optimize_delta(state, 0.8, uniform=False)
    _, bound_scalar = optimize_delta(state, 0.8)
    assert len(delta_vec) == 2
    assert bound_vec.trace_inverse >= bound_scalar.trace_inverse - 1e-9
    assert abs(delta_vec[0] - delta_vec[1]) < 1e-3

    # asymmetric losses: still dominates naive fixed gauges
    eta_vec = (0.5, 0.9)
    delta_vec, bound = optimize_delta(state, eta_vec, uniform=False)
    zero = cq_matrix(state, eta_vec, 0.0)
    assert bound.trace_inverse >= zero.trace_inverse - 1e-9


def test_cq_bound_matrix_is_frozen():
    bound = cq_matrix(generalized_noon(2, 4), 0.9, 0.0)
    assert isinstance(bound, CqBound)
    with pytest.raises(ValueError):
        bound.matrix[0, 0] = 99.0
