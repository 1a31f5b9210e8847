"""Utility metrics for released series."""

from __future__ import annotations

import warnings

import numpy as np
from scipy.stats import rankdata

from .core import InvalidInputError, as_series, check_positive

DEFAULT_EVENT_FRACTION = 0.05


def _pair(r, x) -> tuple[np.ndarray, np.ndarray]:
    r = as_series(r, "released")
    x = as_series(x, "original")
    if r.size != x.size:
        raise InvalidInputError(f"length mismatch: released {r.size} vs original {x.size}")
    return r, x


def avg_relative_error(r, x, delta: float = 1.0) -> float:
    """Mean of ``|r_k - x_k| / max(x_k, delta)``."""
    r, x = _pair(r, x)
    delta = check_positive(delta, "delta")
    return float(np.mean(np.abs(r - x) / np.maximum(x, delta)))


def l1_distance(r, x) -> float:
    r, x = _pair(r, x)
    return float(np.sum(np.abs(r - x)))


def event_threshold(x, frac: float = DEFAULT_EVENT_FRACTION) -> float:
    return check_positive(frac, "frac") * float(np.median(as_series(x)))


def events_above(series, threshold: float) -> set[int]:
    s = as_series(series)
    return {int(k) for k in np.flatnonzero(np.diff(s) > threshold) + 1}


def detect_events(x, frac: float = DEFAULT_EVENT_FRACTION) -> set[int]:
    """Timestamps ``k >= 1`` where the series rises by more than ``frac * median(x)``."""
    x = as_series(x)
    if x.size < 2:
        raise InvalidInputError("event detection needs at least two values")
    return events_above(x, event_threshold(x, frac))


def f1_score(predicted: set[int], truth: set[int]) -> float:
    if not predicted and not truth:
        return 1.0
    tp = len(predicted & truth)
    if tp == 0:
        return 0.0
    precision = tp / len(predicted)
    recall = tp / len(truth)
    return 2 * precision * recall / (precision + recall)


def f1_detection(r, x, frac: float = DEFAULT_EVENT_FRACTION) -> float:
    """F1 of events found in ``r`` against those in ``x``, both thresholded on ``median(x)``."""
    r, x = _pair(r, x)
    if x.size < 2:
        raise InvalidInputError("event detection needs at least two values")
    threshold = event_threshold(x, frac)
    return f1_score(events_above(r, threshold), events_above(x, threshold))


def spearman(r, x) -> float:
    """Spearman rank correlation with average ranks for ties.

    Returns NaN (with a RuntimeWarning) when either series is constant.
    """
    r, x = _pair(r, x)
    if r.size < 2:
        raise InvalidInputError("rank correlation needs at least two values")
    rr = rankdata(r) - (r.size + 1) / 2
    rx = rankdata(x) - (x.size + 1) / 2
    denom = np.sqrt(np.dot(rr, rr) * np.dot(rx, rx))
    if denom == 0:
        warnings.warn("rank correlation undefined for a constant series", RuntimeWarning)
        return float("nan")
    return float(np.clip(np.dot(rr, rx) / denom, -1.0, 1.0))
