import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fastdp.core import ContractViolation, InvalidParameterError
from fastdp.sampler import (
    PidGains,
    SamplerState,
    adapt_interval,
    adaptive_step,
    feedback_error,
    fixed_is_sampling_point,
    pid_error,
)


def test_fixed_rate():
    assert fixed_is_sampling_point(0, 5)
    assert not fixed_is_sampling_point(7, 5)
    assert all(fixed_is_sampling_point(k, 1) for k in range(50))


def test_feedback_error():
    assert feedback_error(3.0, 3.0, 1.0) == 0.0
    assert feedback_error(10.0, 9.0, 1.0) == pytest.approx(0.1)
    assert feedback_error(0.5, 1.5, 1.0) == pytest.approx(1.0)


def test_gains_validation():
    PidGains(0.9, 0.1, 0.0, 5)
    with pytest.raises(InvalidParameterError):
        PidGains(0.5, 0.1, 0.0)
    with pytest.raises(InvalidParameterError):
        PidGains(1.2, -0.2, 0.0)
    with pytest.raises(InvalidParameterError):
        PidGains(1.0, 0.0, 0.0, integral_window=0)


def test_pid_proportional_only():
    assert pid_error([(0, 0.3), (4, 0.7)], PidGains(1, 0, 0)) == pytest.approx(0.7)


def test_pid_default_gains_constant_errors():
    hist = [(k, 0.1) for k in range(0, 25, 5)]
    assert pid_error(hist, PidGains(0.9, 0.1, 0.0, 5)) == pytest.approx(0.1)


def test_pid_derivative():
    assert pid_error([(4, 0.1), (6, 0.3)], PidGains(0, 0, 1)) == pytest.approx(0.1)


def test_pid_first_sample_has_no_derivative():
    assert pid_error([(0, 0.4)], PidGains(0, 0, 1)) == 0.0


def test_pid_integral_window_uses_latest_errors():
    hist = [(0, 9.0), (1, 1.0), (2, 1.0), (3, 1.0)]
    assert pid_error(hist, PidGains(0, 1, 0, integral_window=3)) == pytest.approx(1.0)
    # growing window while fewer than T_i errors exist
    assert pid_error(hist[:2], PidGains(0, 1, 0, integral_window=5)) == pytest.approx(5.0)


def test_pid_empty_history():
    with pytest.raises(InvalidParameterError):
        pid_error([], PidGains())


@given(
    errs=st.lists(st.floats(0, 10), min_size=1, max_size=12),
    scale=st.floats(0, 10),
    window=st.integers(1, 6),
    cp=st.floats(0, 1),
)
def test_pid_linear_in_errors(errs, scale, window, cp):
    gains = PidGains(cp, (1 - cp) / 2, (1 - cp) / 2, window)
    hist = [(3 * i, e) for i, e in enumerate(errs)]
    scaled = [(k, scale * e) for k, e in hist]
    assert pid_error(scaled, gains) == pytest.approx(scale * pid_error(hist, gains), abs=1e-9)


@given(e=st.floats(0, 5), n=st.integers(1, 10), window=st.integers(1, 10), cp=st.floats(0, 1))
def test_pid_constant_error_fixed_point(e, n, window, cp):
    hist = [(k, e) for k in range(n)]
    gains = PidGains(cp, 1 - cp, 0.0, min(window, n))
    assert pid_error(hist, gains) == pytest.approx(e)


def test_adapt_interval_examples():
    assert adapt_interval(5, 0.1, 10, 0.1) == 5
    # 5 + 10 (1 - e^-1) = 11.32
    assert 5 + 10 * (1 - math.exp(-1)) == pytest.approx(11.32, abs=0.01)
    assert adapt_interval(5, 0.0, 10, 0.1) == 11
    assert adapt_interval(5, 1.0, 10, 0.1) == 1
    assert adapt_interval(5, 1e9, 10, 0.1) == 1


@given(
    interval=st.integers(1, 500),
    d1=st.floats(0, 50),
    d2=st.floats(0, 50),
    theta=st.floats(0.1, 100),
    xi=st.floats(0.01, 1),
)
def test_adapt_interval_properties(interval, d1, d2, theta, xi):
    lo, hi = sorted((d1, d2))
    new_lo = adapt_interval(interval, lo, theta, xi)
    new_hi = adapt_interval(interval, hi, theta, xi)
    assert new_lo >= 1 and new_hi >= 1
    assert new_hi <= new_lo
    if hi > xi:
        assert new_hi <= interval
    if lo < xi:
        assert new_lo >= interval


def test_adaptive_step_first_point():
    state = SamplerState()
    _, due = adaptive_step(state, 0)
    assert due


def test_adaptive_step_at_set_point_keeps_interval():
    state = SamplerState(gains=PidGains(1, 0, 0), interval=4, next_sample=10)
    state, due = adaptive_step(state, 10, feedback=0.1)
    assert due
    assert state.interval == 4
    assert state.next_sample == 14


def test_adaptive_step_between_samples_is_inert():
    state = SamplerState(interval=4, next_sample=10)
    before = (state.interval, state.next_sample, list(state.history))
    _, due = adaptive_step(state, 7)
    assert not due
    assert (state.interval, state.next_sample, state.history) == before


def test_feedback_at_non_sampling_point_is_rejected():
    state = SamplerState(next_sample=10)
    with pytest.raises(ContractViolation):
        adaptive_step(state, 3, feedback=0.2)


def test_next_sample_strictly_increases():
    state = SamplerState()
    last = -1
    for e in [0.0, 5.0, 0.01, 0.2, 0.05, 3.0]:
        k = state.next_sample
        adaptive_step(state, k, e)
        assert state.next_sample > k > last
        last = k
