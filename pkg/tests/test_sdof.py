import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import signal as ss

import shockssi as S
from shockssi.errors import AliasError, ParameterError

ZETA = 0.05
STEP_PEAK = 1 + np.exp(-ZETA * np.pi / np.sqrt(1 - ZETA**2))  # 1.8545


def test_log_grid_octaves():
    np.testing.assert_allclose(S.log_freq_grid(100, 800, 1), [100, 200, 400, 800])


def test_log_grid_degenerate():
    np.testing.assert_array_equal(S.log_freq_grid(100, 100, 6), [100])


def test_log_grid_default_range():
    g = S.log_freq_grid(100, 25600, 6)
    assert g.size == 8 * 6 + 1
    assert g[-1] == 25600 and g[0] == 100


def test_log_grid_appends_fmax():
    g = S.log_freq_grid(100, 1000, 1)
    np.testing.assert_allclose(g, [100, 200, 400, 800, 1000])


def test_log_grid_errors():
    with pytest.raises(ParameterError):
        S.log_freq_grid(0, 100, 6)
    with pytest.raises(ParameterError):
        S.log_freq_grid(100, 1000, 0)


def test_bank():
    b = S.OscillatorBank.log_spaced()
    assert b.q == 10 and b.zeta == 0.05 and len(b) == 49
    with pytest.raises(ParameterError):
        S.OscillatorBank([100, 50])
    with pytest.raises(ParameterError):
        S.OscillatorBank([100, 200], q=0.5)


def test_zero_input_zero_output():
    z = S.Signal(np.zeros(500), 1e-4)
    assert not np.any(S.sdof_response_filter(z, 300, ZETA).samples)
    assert not np.any(S.sdof_response_oracle(z, 300, ZETA).samples)


def test_step_peak_filter():
    step = S.Signal(np.full(20000, 3.0), 1e-5)
    for fn in (200, 1000, 5000):
        peak = np.abs(S.sdof_response_filter(step, fn, ZETA).samples).max()
        assert peak == pytest.approx(STEP_PEAK * 3.0, rel=0.01)


def test_step_response_matches_continuous_system():
    # scipy's continuous-time step response of (c s + k)/(s^2 + c s + k)
    fn, dt = 500.0, 1e-5
    wn = 2 * np.pi * fn
    sys = ss.lti([2 * ZETA * wn, wn**2], [1, 2 * ZETA * wn, wn**2])
    t = np.arange(4000) * dt
    _, ref = ss.step(sys, T=t)
    step = S.Signal(np.ones(4000), dt)
    y = S.sdof_response_filter(step, fn, ZETA).samples
    # the filter sees a ramp from 0 at t=-dt to 1 at t=0
    u = np.ones(4001)
    u[0] = 0.0
    _, ramp, _ = ss.lsim(sys, U=u, T=np.arange(4001) * dt)
    np.testing.assert_allclose(y, ramp[1:], atol=1e-6)
    assert np.abs(y).max() == pytest.approx(ref.max(), rel=2e-3)


def test_resonant_amplification_oracle():
    fn, dt = 200.0, 1e-4
    t = np.arange(int(1.0 / dt)) * dt
    sig = S.Signal(np.sin(2 * np.pi * fn * t), dt)
    y = S.sdof_response_oracle(sig, fn, ZETA).samples
    steady = np.abs(y[len(y) // 2:]).max()
    assert steady == pytest.approx(10.0, rel=0.03)


def test_half_sine_amplification():
    pulse = S.gen_half_sine(100, 0.011, 0.0001, 0.1)
    fn = 0.8 / 0.011
    peak = np.abs(S.sdof_response_oracle(pulse, fn, ZETA).samples).max()
    assert peak > 100
    assert np.abs(S.sdof_response_filter(pulse, fn, ZETA).samples).max() > 100


def test_alias_guard():
    sig = S.Signal(np.ones(100), 1e-4)
    S.sdof_response_filter(sig, 3999, ZETA)
    with pytest.raises(AliasError):
        S.sdof_response_filter(sig, 4000, ZETA)


def test_parameter_validation():
    sig = S.Signal(np.ones(10), 1e-3)
    with pytest.raises(ParameterError):
        S.sdof_response_filter(sig, 10, 1.2)
    with pytest.raises(ParameterError):
        S.sdof_response_oracle(sig, 10, ZETA, substeps=2)


@pytest.mark.parametrize("fn", [60.0, 250.0, 1000.0, 3000.0])
def test_filter_matches_oracle_half_sine(fn):
    pulse = S.gen_half_sine(100, 0.002, 2e-5, 0.03)
    a = S.sdof_response_filter(pulse, fn, ZETA).samples
    b = S.sdof_response_oracle(pulse, fn, ZETA).samples
    assert np.abs(a).max() == pytest.approx(np.abs(b).max(), rel=0.02)
    np.testing.assert_allclose(a, b, atol=1e-3 * np.abs(b).max())


def test_filter_matches_oracle_damped_sines():
    sig = S.gen_damped_sine_sum([(300, 10, 30, 0), (1700, 20, 200, 1)], 0.05, 1e-5)
    for fn in (250, 1700, 9000):
        a = S.sdof_response_filter(sig, fn, ZETA).samples
        b = S.sdof_response_oracle(sig, fn, ZETA).samples
        assert np.abs(a).max() == pytest.approx(np.abs(b).max(), rel=0.02)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-5, 5), st.floats(-5, 5))
def test_linearity(seed, a, b):
    rng = np.random.default_rng(seed)
    x, y = rng.standard_normal((2, 400))
    dt, fn = 1e-4, 700.0
    r = lambda v: S.sdof_response_filter(S.Signal(v, dt), fn, ZETA).samples
    lhs = r(a * x + b * y)
    rhs = a * r(x) + b * r(y)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * (1 + np.abs(rhs).max()))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 50))
def test_time_invariance(seed, k):
    x = np.random.default_rng(seed).standard_normal(300)
    dt, fn = 1e-4, 900.0
    y = S.sdof_response_filter(S.Signal(x, dt), fn, ZETA).samples
    ys = S.sdof_response_filter(S.Signal(np.concatenate([np.zeros(k), x]), dt), fn, ZETA).samples
    assert not np.any(ys[:k])
    np.testing.assert_array_equal(ys[k:], y)
