import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qcss_bounds.bounds import glb, glb_cosine_exact, k_bar, welch_bound
from qcss_bounds.circulant import (
    QcssParams,
    circulant_matrix,
    lambda0_lambda1,
    spectrum_closed_form,
)
from qcss_bounds.optimizer import (
    classify_case,
    cosine_case_ab,
    fqp_objective,
    gamma_decomposition,
    local_min_check,
    optimal_r,
    solve_problem1,
)
from qcss_bounds.weights import cosine_weights, raised_cosine_weights, uniform_weights


def _f_dense(p, x):
    Q = circulant_matrix(p)
    return float(x @ Q @ x) / (1 - float(x @ x) / p.K)


def _feasible_perturbation(rng, w, scale):
    # nonnegative on the zero entries of w, zero mean on the rest
    zero = w == 0
    e = rng.standard_normal(len(w))
    e[zero] = np.abs(e[zero])
    e[~zero] -= e.sum() / np.count_nonzero(~zero)
    e *= scale / np.linalg.norm(e)
    neg = e < 0
    e *= min(1.0, float(np.min(w[neg] / -e[neg])))
    assert np.linalg.norm(e) > 0 and np.all(w + e >= 0)
    return e


# ---------------------------------------------------------------- problem 1


@pytest.mark.parametrize("M,N", [(2, 2048), (3, 64), (17, 300), (64, 256)])
def test_case1_just_above_k_bar(M, N):
    p = QcssParams(k_bar(M, N) + 1, M, N)
    lab = classify_case(p)
    assert lab.is_case1 and lab.k_condition and lab.ratio_condition_holds
    assert optimal_r(p) == pytest.approx(1 / (2 * math.cos(math.pi / p.length)))


@pytest.mark.parametrize("M,N", [(2, 2048), (3, 64), (5, 7)])
def test_case2_at_or_below_k_bar(M, N):
    p = QcssParams(k_bar(M, N), M, N)
    assert not classify_case(p).is_case1
    assert optimal_r(p) == 0.0


@settings(max_examples=100)
@given(st.integers(2, 40), st.integers(2, 300), st.integers(1, 400))
def test_case_label_matches_cosine_validity(M, N, K):
    p = QcssParams(K, M, N)
    lab = classify_case(p)
    assert lab.is_case1 == glb_cosine_exact(p).valid
    lam0, lam1 = lambda0_lambda1(p)
    assert (lab.lambda0, lab.lambda1) == (lam0, lam1)


@pytest.mark.parametrize("K_offset", [-2, 0, 1, 5])
def test_reduced_ratio_is_monotone_in_r(K_offset):
    M, N = 4, 40
    p = QcssParams(k_bar(M, N) + K_offset, M, N)
    r_max = 1 / (2 * math.cos(math.pi / p.length))
    values = [glb(p, raised_cosine_weights(N, r)).value for r in np.linspace(0, r_max, 25)]
    steps = np.diff(values)
    if classify_case(p).is_case1:
        assert np.all(steps > 0)
    else:
        assert np.all(steps < 0)


@pytest.mark.parametrize("M,N,off", [(2, 64, 1), (2, 64, 0), (7, 100, 3), (3, 5, -1)])
def test_solve_problem1_returns_the_right_end(M, N, off):
    p = QcssParams(max(1, k_bar(M, N) + off), M, N)
    w, bound = solve_problem1(p)
    if classify_case(p).is_case1:
        assert np.array_equal(w, cosine_weights(N))
        assert bound.value > welch_bound(p).value
    else:
        assert np.array_equal(w, uniform_weights(N))
        assert bound.value == welch_bound(p).value


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(3, 60), st.integers(-2, 6),
       st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_single_frequency_optimum(M, N, off, frac, theta):
    # no raised cosine with any phase beats the problem-1 solution
    p = QcssParams(max(1, k_bar(M, N) + off), M, N)
    r = frac / (2 * math.cos(math.pi / p.length))
    w = raised_cosine_weights(N, r, theta)
    assume(np.min(w) >= 0)
    w = w / w.sum()
    _, best = solve_problem1(p)
    # the bound can be exactly 0 (K = M); roundoff in M(N - Q) scales with MN
    assert glb(p, w).value <= best.value + 1e-9 * max(abs(best.value), M * N)


def test_fqp_objective_relation():
    p = QcssParams(9, 3, 20)
    w = cosine_weights(20)
    assert fqp_objective(p, w) == pytest.approx(_f_dense(p, w), rel=1e-12)
    assert glb(p, w).value == pytest.approx(p.M * (p.N - fqp_objective(p, w)), rel=1e-12)


# ---------------------------------------------------------------- decomposition


@pytest.mark.parametrize("M,N", [(8, 32), (64, 256), (3, 5)])
def test_gamma_decomposition_equals_difference(rng, M, N):
    p = QcssParams(k_bar(M, N) + 1, M, N)
    w = cosine_weights(N)
    for scale in (1e-2, 1e-4, 1e-6):
        e = _feasible_perturbation(rng, w, scale)
        g = gamma_decomposition(p, w, e)
        assert g.rel_err < 1e-9
        D0 = 1 - float(w @ w) / p.K
        D1 = 1 - float((w + e) @ (w + e)) / p.K
        direct = (_f_dense(p, w + e) - _f_dense(p, w)) * D0 * D1
        assert g.lhs == pytest.approx(direct, rel=1e-6, abs=1e-12 * _f_dense(p, w))
        assert g.gamma == pytest.approx((g.alpha + 2 * g.beta) / p.K)


def test_gamma_decomposition_needs_zero_sum():
    p = QcssParams(5, 2, 8)
    with pytest.raises(ValueError, match="sum to zero"):
        gamma_decomposition(p, cosine_weights(8), np.full(15, 1e-3))


def test_gamma_decomposition_skips_direct_route_for_large_n(rng):
    p = QcssParams(5, 2, 600)
    w = cosine_weights(600)
    g = gamma_decomposition(p, w, _feasible_perturbation(rng, w, 1e-5))
    assert g.lhs_direct is None and g.rel_err is None


@pytest.mark.parametrize("M,N", [(8, 32), (64, 256), (3, 5), (2, 2)])
def test_case_ab_identity(rng, M, N):
    p = QcssParams(k_bar(M, N) + 1, M, N)
    w = cosine_weights(N)
    lam1 = spectrum_closed_form(p).lambda1
    for _ in range(5):
        e = _feasible_perturbation(rng, w, 1e-4)
        g = gamma_decomposition(p, w, e)
        A, B = cosine_case_ab(p, np.fft.fft(e))
        assert p.length * g.lhs == pytest.approx(lam1 * A + B, rel=1e-9, abs=1e-9 * g.scale * p.length)


def test_case_ab_as_printed_does_not_close(rng):
    p = QcssParams(k_bar(8, 32) + 1, 8, 32)
    w = cosine_weights(32)
    e = _feasible_perturbation(rng, w, 1e-4)
    E = np.fft.fft(e)
    lhs = p.length * gamma_decomposition(p, w, e).lhs
    A, B = cosine_case_ab(p, E, printed=True)
    assert abs(lhs - (spectrum_closed_form(p).lambda1 * A + B)) > 1e-6 * abs(lhs)


def test_case_two_closed_form(rng):
    # pure E_1 perturbation: lambda1 A + B factorizes
    p = QcssParams(k_bar(16, 64) + 1, 16, 64)
    L = p.length
    c = math.cos(math.pi / L)
    lam0, lam1 = lambda0_lambda1(p)
    E = np.zeros(L, dtype=complex)
    E[1] = 0.01 * np.exp(2.1j)
    E[L - 1] = np.conj(E[1])
    A, B = cosine_case_ab(p, E)
    factor = 2 * abs(E[1]) ** 2 + 2 * E[1].real / c
    assert lam1 * A + B == pytest.approx(factor * (lam1 + (lam0 - lam1) / (p.K * L)), rel=1e-12)


@pytest.mark.parametrize("M,N", [(2, 16), (8, 32), (64, 256), (256, 512)])
def test_higher_eigenvalues_stay_above_two_thirds_of_a(M, N):
    p = QcssParams(k_bar(M, N) + 1, M, N)
    lam = spectrum_closed_form(p).lambdas
    assert np.min(lam[2:N]) / p.a > 2 / 3
    assert lam[1] < 0


def test_first_order_descent_direction_exists():
    # moving mass from entry N/2 onto the peak lowers f at first order
    p = QcssParams(k_bar(64, 256) + 1, 64, 256)
    w = cosine_weights(256)
    e = np.zeros(p.length)
    e[0], e[128] = 1e-6, -1e-6
    assert np.all(w + e >= 0)
    diff = _f_dense(p, w + e) - _f_dense(p, w)
    assert diff < -1e-10 * _f_dense(p, w)


# ---------------------------------------------------------------- local-min probe


def test_local_min_check_report_shape():
    p = QcssParams(k_bar(8, 32) + 1, 8, 32)
    rep = local_min_check(p, trials=300, seed=3)
    d = rep.to_dict()
    assert d["trials"] == 300
    assert sum(b["trials"] for b in d["breakdown"].values()) == 300
    assert rep.max_decomp_rel_err < 1e-9
    assert 0 < rep.min_norm <= rep.max_norm <= 1e-4 * (1 + 1e-12)
    assert rep.f_w == pytest.approx(_f_dense(p, cosine_weights(32)), rel=1e-12)


def test_local_min_check_is_seeded():
    p = QcssParams(k_bar(4, 16) + 1, 4, 16)
    a = local_min_check(p, trials=200, seed=11).to_dict()
    b = local_min_check(p, trials=200, seed=11).to_dict()
    assert a == b


def test_case2_band_perturbations_do_not_decrease_f():
    p = QcssParams(k_bar(64, 256) + 1, 64, 256)
    rep = local_min_check(p, trials=900, seed=5)
    case2 = rep.breakdown["case2"]
    assert case2["case2_structure"] == case2["trials"]
    assert case2["min_difference"] >= 0


def test_local_min_check_small_n_and_notes():
    rep = local_min_check(QcssParams(5, 2, 2), trials=30, seed=0)
    assert rep.trials == 30
    assert "K-bar+1" in local_min_check(QcssParams(50, 2, 8), trials=3).notes


def test_local_min_check_argument_errors():
    with pytest.raises(ValueError):
        local_min_check(QcssParams(5, 2, 8), trials=0)
    with pytest.raises(ValueError):
        local_min_check(QcssParams(5, 2, 8), norm_cap=0)
    with pytest.raises(ValueError):
        local_min_check(QcssParams(5, 2, 600), trials=1)
