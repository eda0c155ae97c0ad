import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import shockssi as S
from shockssi.errors import DegenerateInput, GridError

from conftest import random_nonneg


def power_iteration(N, iters=5000):
    """Leading singular triplet without LAPACK."""
    v = np.ones(N.shape[1]) / np.sqrt(N.shape[1])
    for _ in range(iters):
        w = N.T @ (N @ v)
        v_new = w / np.linalg.norm(w)
        if np.linalg.norm(v_new - v) < 1e-15:
            v = v_new
            break
        v = v_new
    s = np.linalg.norm(N @ v)
    return s, N @ v / s, v


def test_rank_one_exact():
    rng = np.random.default_rng(1)
    u, v = rng.uniform(0, 3, 300), rng.uniform(0, 2, 12)
    d = S.svd_nonneg(np.outer(u, v))
    assert d.rank == 1
    assert d.sigma[0] == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v), rel=1e-12)
    assert np.all(d.v_vectors[:, 0] >= 0) and np.all(d.u_vectors[:, 0] >= 0)


def test_identity():
    d = S.svd_nonneg(np.eye(7))
    np.testing.assert_allclose(d.sigma, 1.0, rtol=1e-14)
    assert d.rank == 7


def test_zero_matrix_degenerate():
    with pytest.raises(DegenerateInput):
        S.svd_nonneg(np.zeros((10, 3)))


def test_reconstruction_and_orthonormality():
    rng = np.random.default_rng(2)
    N = random_nonneg(rng, 200, 20)
    d = S.svd_nonneg(N)
    assert np.linalg.norm(d.reconstruct() - N) / np.linalg.norm(N) < 1e-8
    r = d.rank
    np.testing.assert_allclose(d.u_vectors.T @ d.u_vectors, np.eye(r), atol=1e-10)
    np.testing.assert_allclose(d.v_vectors.T @ d.v_vectors, np.eye(r), atol=1e-10)
    assert np.all(np.diff(d.sigma) <= 0)


def test_wide_matrix():
    N = random_nonneg(np.random.default_rng(3), 8, 30)
    d = S.svd_nonneg(N)
    assert np.linalg.norm(d.reconstruct() - N) / np.linalg.norm(N) < 1e-8


def test_leading_triplet_matches_power_iteration(pyro_matrix):
    N = pyro_matrix.n_abs
    d = S.svd_nonneg(pyro_matrix)
    s, u, v = power_iteration(N)
    assert d.sigma[0] == pytest.approx(s, rel=1e-10)
    np.testing.assert_allclose(d.v_vectors[:, 0], v, atol=1e-6)
    np.testing.assert_allclose(d.u_vectors[:, 0], u, atol=1e-6)


def test_sign_canonical(pyro_matrix):
    d = S.svd_nonneg(pyro_matrix)
    assert np.all(d.v_vectors.sum(axis=0) >= 0)
    # Perron direction of a non-negative matrix
    assert np.all(d.v_vectors[:, 0] >= -1e-12)
    assert np.all(d.u_vectors[:, 0] >= -1e-12)


def test_rank_deficient_drop():
    rng = np.random.default_rng(4)
    A = rng.uniform(0, 1, (100, 2)) @ rng.uniform(0, 1, (2, 6))
    d = S.svd_nonneg(A)
    assert d.rank == 2


def test_ssi_rank_one_equals_srs():
    t = np.arange(400) * 1e-4
    col = np.abs(np.sin(2 * np.pi * 30 * t)) * np.exp(-5 * t)
    M = S.ResponseMatrix.from_signed(np.outer(col, [1.0, 2.0, 0.5]), t, [10.0, 20.0, 40.0])
    res = S.ssi_extract(S.svd_nonneg(M))
    assert res.alpha == 0.0
    np.testing.assert_allclose(res.v_ssi, S.srs(M).values, rtol=1e-12)


def test_ssi_definitions(pyro_matrix):
    d = S.svd_nonneg(pyro_matrix)
    res = S.ssi_extract(d)
    u1 = d.u_vectors[:, 0]
    np.testing.assert_allclose(res.v_ssi, d.sigma[0] * np.abs(u1).max() * d.v_vectors[:, 0],
                               rtol=1e-14)
    assert np.abs(res.u_ssi).max() == 1.0
    assert 0 <= res.alpha < 1
    sig = d.sigma
    assert res.alpha == pytest.approx(1 - sig[0] ** 2 / np.sum(sig**2), abs=1e-15)


def test_ssi_is_srs_of_n1(suite_matrices):
    for M in suite_matrices:
        d = S.svd_nonneg(M)
        res = S.ssi_extract(d)
        n1 = d.component(1)
        np.testing.assert_allclose(res.v_ssi, n1.max(axis=0), rtol=1e-12,
                                   atol=1e-12 * res.v_ssi.max())
        np.testing.assert_allclose(res.n1(), n1, atol=1e-12 * n1.max())


def test_alpha_two_forms(suite_matrices):
    for M in suite_matrices:
        d = S.svd_nonneg(M)
        assert S.ssi_extract(d).alpha == pytest.approx(S.ssi.residual_share(M, d), abs=1e-10)


def test_eckart_young_rank_one_optimality(pyro_matrix):
    N = pyro_matrix.n_abs
    d = S.svd_nonneg(pyro_matrix)
    best = np.linalg.norm(N - d.component(1))
    rng = np.random.default_rng(5)
    u1, v1, s1 = d.u_vectors[:, 0], d.v_vectors[:, 0], d.sigma[0]
    for k in range(100):
        # candidates: perturbed leading pair, and a random rank-one matrix
        eps = 10.0 ** rng.uniform(-4, 0)
        u = u1 + eps * rng.standard_normal(u1.size) / np.sqrt(u1.size)
        v = v1 + eps * rng.standard_normal(v1.size) / np.sqrt(v1.size)
        cand = s1 * rng.uniform(0.5, 1.5) * np.outer(u, v)
        assert best <= np.linalg.norm(N - cand) * (1 + 1e-12)


def test_scale_invariance(pyro_matrix):
    d = S.svd_nonneg(pyro_matrix)
    res = S.ssi_extract(d)
    for c in (1e-3, 7.5, 1e4):
        rc = S.ssi_extract(S.svd_nonneg(c * pyro_matrix.n_abs))
        assert rc.alpha == pytest.approx(res.alpha, abs=1e-12)
        np.testing.assert_allclose(rc.v_ssi, c * res.v_ssi, rtol=1e-10)


def test_elementwise_dominance_is_empirical(suite_matrices):
    # srs >= ssi per bin is the unproved left bound at x = e_j. It holds for
    # the pyroshock-like fixtures but short pulses are counterexamples.
    by_label = {M.label: S.analyse(M)[2] for M in suite_matrices}
    for label in ("pyro0", "pyro2", "pyro3"):
        dual = by_label[label]
        assert np.all(dual.srs >= dual.ssi * (1 - 1e-12))
        assert np.all(dual.margin_db >= -1e-9)
    short = by_label["halfsine-0.5ms"]
    assert np.any(short.ssi > short.srs)
    assert short.margin_db.min() < -3.0


def test_margin_zero_for_rank_one():
    t = np.arange(100) * 1e-3
    M = S.ResponseMatrix.from_signed(np.outer(np.sin(t * 40), [3.0, 1.0]), t, [5.0, 6.0])
    _, _, dual = S.analyse(M)
    np.testing.assert_allclose(dual.margin_db, 0.0, atol=1e-9)


def test_margin_factor_two():
    freqs = np.array([10.0, 20.0])
    spec = S.SrsVector(np.array([4.0, 2.0]), freqs)
    res = S.SsiResult(np.array([2.0, 2.0]), np.ones(3), 0.1, np.array([1.0]), freqs)
    dual = S.dual_spectra(spec, res)
    assert dual.margin_db[0] == pytest.approx(20 * np.log10(2), abs=1e-12)
    assert dual.margin_db[0] == pytest.approx(6.0206, abs=1e-4)
    assert dual.margin_db[1] == 0.0


def test_margin_underflow_flagged():
    freqs = np.array([10.0, 20.0, 30.0])
    spec = S.SrsVector(np.array([4.0, 2.0, 1.0]), freqs)
    res = S.SsiResult(np.array([2.0, 0.0, 1e-20]), np.ones(3), 0.1, np.array([1.0]), freqs)
    dual = S.dual_spectra(spec, res)
    assert list(dual.flagged) == [False, True, True]
    assert np.isinf(dual.margin_db[1:]).all()


def test_grid_mismatch():
    spec = S.SrsVector(np.ones(2), np.array([10.0, 20.0]))
    res = S.SsiResult(np.ones(2), np.ones(3), 0.1, np.ones(1), np.array([10.0, 21.0]))
    with pytest.raises(GridError):
        S.dual_spectra(spec, res)


def test_trend_bound_rank_one():
    N = np.outer(np.arange(1, 50.0), [1.0, 2.0, 3.0])
    d = S.svd_nonneg(N)
    chk = S.trend_bound_check(N, d, np.array([1.0, 0.5, 2.0]))
    assert chk.rhs == 0.0
    assert chk.lhs < 1e-10 * d.sigma[0]
    assert chk.holds


def test_trend_bound_zero_weights(pyro_matrix):
    d = S.svd_nonneg(pyro_matrix)
    chk = S.trend_bound_check(pyro_matrix, d, np.zeros(49))
    assert chk == (0.0, 0.0, True)


def test_trend_bound_random_draws():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        m, n = rng.integers(5, 60), rng.integers(2, 12)
        N = random_nonneg(rng, m, n)
        d = S.svd_nonneg(N)
        x = np.abs(rng.standard_normal(n))
        assert S.trend_bound_check(N, d, x).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 80), st.integers(1, 10))
def test_trend_bound_property(seed, m, n):
    rng = np.random.default_rng(seed)
    N = random_nonneg(rng, m, n)
    d = S.svd_nonneg(N)
    x = np.abs(rng.standard_normal(n)) * (rng.uniform(size=n) > 0.3)
    chk = S.trend_bound_check(N, d, x)
    assert chk.holds
    # operator-norm form: ||N - N_1||_2 equals sigma_2
    op = np.linalg.norm(N - d.component(1), 2)
    expect = d.sigma[1] if d.rank > 1 else 0.0
    assert op == pytest.approx(expect, abs=1e-9 * d.sigma[0])


def test_dual_csv(tmp_path, pyro_matrix):
    _, _, dual = S.analyse(pyro_matrix)
    S.write_dual_csv(dual, tmp_path / "d.csv")
    lines = (tmp_path / "d.csv").read_text().splitlines()
    assert lines[0] == "freq_hz,srs_ms2,ssi_ms2,margin_db"
    data = np.loadtxt(tmp_path / "d.csv", delimiter=",", skiprows=1)
    np.testing.assert_array_equal(data[:, 3], dual.margin_db)
    S.write_dual_svg(dual, tmp_path / "d.svg")
    assert "margin (dB)" in (tmp_path / "d.svg").read_text()
