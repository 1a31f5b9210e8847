"""Sampling schedules: fixed-rate and PID-controlled adaptive intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import ContractViolation, InvalidParameterError, check_positive, check_positive_int

DEFAULT_GAINS = (0.9, 0.1, 0.0)
DEFAULT_INTEGRAL_WINDOW = 5
DEFAULT_THETA = 10.0
DEFAULT_XI = 0.1
DEFAULT_DELTA = 1.0


@dataclass(frozen=True)
class PidGains:
    proportional: float = DEFAULT_GAINS[0]
    integral: float = DEFAULT_GAINS[1]
    derivative: float = DEFAULT_GAINS[2]
    integral_window: int = DEFAULT_INTEGRAL_WINDOW

    def __post_init__(self):
        gains = (self.proportional, self.integral, self.derivative)
        if any(g < 0 for g in gains):
            raise InvalidParameterError(f"PID gains must be non-negative, got {gains}")
        if abs(sum(gains) - 1.0) > 1e-9:
            raise InvalidParameterError(f"PID gains must sum to 1, got {gains}")
        check_positive_int(self.integral_window, "integral_window")


def fixed_is_sampling_point(k: int, interval: int) -> bool:
    check_positive_int(interval, "interval")
    return k % interval == 0


def feedback_error(posterior: float, prior: float, delta: float = DEFAULT_DELTA) -> float:
    """Relative gap between posterior and prior, with the denominator floored at ``delta``."""
    return abs(posterior - prior) / max(posterior, delta)


def pid_error(history: list[tuple[int, float]], gains: PidGains) -> float:
    """Combine the latest feedback errors into one control signal.

    ``history`` holds ``(timestamp, error)`` pairs in sampling order. The
    integral term averages over the last ``integral_window`` errors, or all of
    them while fewer exist; the derivative term is 0 at the first sample.
    """
    if not history:
        raise InvalidParameterError("pid_error needs at least one feedback error")
    k_n, e_n = history[-1]
    window = history[-gains.integral_window:]
    integral = sum(e for _, e in window) / len(window)
    derivative = 0.0
    if len(history) > 1:
        k_prev, e_prev = history[-2]
        derivative = (e_n - e_prev) / (k_n - k_prev)
    return gains.proportional * e_n + gains.integral * integral + gains.derivative * derivative


def adapt_interval(interval: int, delta_pid: float, theta: float, xi: float) -> int:
    """New interval ``max(1, round(I + theta * (1 - exp((D - xi) / xi))))``.

    Halves round up; the exponent is capped so huge errors clamp to 1 instead of overflowing.
    """
    exponent = min((delta_pid - xi) / xi, 700.0)
    raw = interval + theta * (1.0 - math.exp(exponent))
    return max(1, math.floor(raw + 0.5))


@dataclass
class SamplerState:
    gains: PidGains = field(default_factory=PidGains)
    theta: float = DEFAULT_THETA
    xi: float = DEFAULT_XI
    interval: int = 1
    next_sample: int = 0
    history: list[tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        check_positive(self.theta, "theta")
        check_positive(self.xi, "xi")
        check_positive_int(self.interval, "interval")


def adaptive_step(
    state: SamplerState, k: int, feedback: float | None = None
) -> tuple[SamplerState, bool]:
    """Report whether ``k`` is a sampling point; with ``feedback``, schedule the next one.

    The caller first asks with ``feedback=None`` and, after correcting the
    filter at a sampling point, calls again with the feedback error.
    """
    is_sampling = k == state.next_sample
    if feedback is None:
        return state, is_sampling
    if not is_sampling:
        raise ContractViolation(f"feedback supplied at non-sampling timestamp {k}")
    state.history.append((k, float(feedback)))
    delta_pid = pid_error(state.history, state.gains)
    state.interval = adapt_interval(state.interval, delta_pid, state.theta, state.xi)
    state.next_sample = k + state.interval
    return state, True
