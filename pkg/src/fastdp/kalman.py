"""Scalar Kalman filter for the constant process model ``x_k = x_{k-1} + N(0, Q)``.

Laplace measurement noise is approximated by a Gaussian of variance ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import check_positive, check_positive_int

DEFAULT_Q = 1e5
DEFAULT_R = 1e6


@dataclass(frozen=True)
class KalmanState:
    estimate: float
    prior_variance: float
    posterior_variance: float
    process_noise: float
    measurement_noise: float
    gain: float = 0.0


def kf_init(z0: float, Q: float = DEFAULT_Q, R: float = DEFAULT_R) -> KalmanState:
    """Start from the first noisy measurement with posterior variance ``R``."""
    Q = check_positive(Q, "Q")
    R = check_positive(R, "R")
    return KalmanState(
        estimate=float(z0),
        prior_variance=R,
        posterior_variance=R,
        process_noise=Q,
        measurement_noise=R,
    )


def kf_predict(state: KalmanState) -> tuple[KalmanState, float]:
    prior_var = state.posterior_variance + state.process_noise
    return replace(state, prior_variance=prior_var), state.estimate


def kf_correct(state: KalmanState, z: float) -> tuple[KalmanState, float]:
    p_minus = state.prior_variance
    gain = p_minus / (p_minus + state.measurement_noise)
    estimate = state.estimate + gain * (z - state.estimate)
    new = replace(
        state,
        estimate=estimate,
        posterior_variance=(1.0 - gain) * p_minus,
        gain=gain,
    )
    return new, estimate


def suggest_R(T: int, alpha: float, c: float = 1.0) -> float:
    """Measurement-noise variance scaled as ``c * T**2 / alpha**2``.

    ``T / alpha`` is the per-sample Laplace scale, so for a run with ``M``
    samples pass ``T=M``.
    """
    T = check_positive_int(T, "T")
    alpha = check_positive(alpha, "alpha")
    c = check_positive(c, "c")
    return c * T * T / (alpha * alpha)
