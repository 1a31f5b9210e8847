"""Offline comparison methods: per-step Laplace perturbation and truncated-DFT perturbation."""

from __future__ import annotations

import numpy as np

from .core import InvalidParameterError, as_series, check_positive
from .noise import RandomSource, sample_laplace

DEFAULT_DFT_COEFFICIENTS = 20


def lpa_release(x, alpha: float, rng: RandomSource) -> np.ndarray:
    """Add independent Lap(0, T/alpha) noise to every value."""
    x = as_series(x)
    alpha = check_positive(alpha, "alpha")
    return x + sample_laplace(x.size / alpha, rng, size=x.size)


def _check_d(d: int, T: int) -> int:
    if isinstance(d, bool) or int(d) != d or not 1 <= d <= T:
        raise InvalidParameterError(f"d must be an integer in [1, {T}], got {d!r}")
    return int(d)


def _phase(T: int, rows: int, cols: int, sign: float) -> np.ndarray:
    j = np.arange(rows)[:, None]
    i = np.arange(cols)[None, :]
    # reduce j*i mod T before scaling to keep the angle accurate for large T
    return np.exp(sign * 2j * np.pi * ((j * i) % T) / T)


def dft_forward(x, d: int) -> np.ndarray:
    """First ``d`` coefficients of ``sum_i exp(+2*pi*sqrt(-1)*j*i/T) x_i``.

    Direct O(T*d) summation; note the positive exponent in the forward
    direction (the inverse carries the negative sign and the 1/T factor).
    """
    x = as_series(x)
    d = _check_d(d, x.size)
    return _phase(x.size, d, x.size, +1.0) @ x


def idft(coeffs: np.ndarray, T: int) -> np.ndarray:
    """Inverse of :func:`dft_forward` after zero-padding ``coeffs`` to length ``T``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    d = _check_d(coeffs.size, T)
    # zero-padded coefficients contribute nothing, so only the first d columns are needed
    return (_phase(T, T, d, -1.0) @ coeffs) / T


def dft_release(x, alpha: float, d: int, rng: RandomSource) -> np.ndarray:
    """Perturb the first ``d`` Fourier coefficients and reconstruct.

    The coefficients are treated as ``2d`` real values (real and imaginary
    parts), each receiving Lap(0, 2d/alpha). Returns the real part of the
    inverse transform of the zero-padded noisy spectrum.
    """
    x = as_series(x)
    alpha = check_positive(alpha, "alpha")
    d = _check_d(d, x.size)
    coeffs = dft_forward(x, d)
    noise = sample_laplace(2 * d / alpha, rng, size=2 * d)
    noisy = coeffs + noise[:d] + 1j * noise[d:]
    return idft(noisy, x.size).real
