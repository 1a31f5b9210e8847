"""Synthetic series and CSV input/output.

CSV series format: optional single header line, then ``timestamp,value`` rows
with strictly increasing integer timestamps. LF or CRLF line endings.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from .core import InvalidInputError, ReleaseRecord, check_positive, check_positive_int
from .noise import DATA_STREAM, RandomSource

DEFAULT_LINEAR_START = 1000.0
DEFAULT_AMPLITUDE = 5000.0


class CsvFormatError(InvalidInputError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    kind: Literal["linear", "logistic", "sinusoidal"] = "linear"
    length: int = 1000
    seed: int = 0
    Q: float = 1e5
    x0: float = DEFAULT_LINEAR_START
    A: float = DEFAULT_AMPLITUDE
    b: float = math.pi / 6
    c: float = math.pi / 2

    def generate(self) -> np.ndarray:
        if self.kind == "linear":
            return gen_linear(self.length, self.Q, self.x0, RandomSource(self.seed, DATA_STREAM))
        if self.kind == "logistic":
            return gen_logistic(self.length, self.A)
        if self.kind == "sinusoidal":
            return gen_sinusoidal(self.length, self.A, self.b, self.c)
        raise InvalidInputError(f"unknown generator kind {self.kind!r}")


def gen_linear(T: int, Q: float, x0: float, rng: RandomSource) -> np.ndarray:
    """Gaussian random walk ``x_k = x_{k-1} + N(0, Q)`` starting at ``x0``."""
    T = check_positive_int(T, "T")
    Q = check_positive(Q, "Q")
    steps = math.sqrt(Q) * rng.standard_normal(T - 1)
    return x0 + np.concatenate(([0.0], np.cumsum(steps)))


def gen_logistic(T: int, A: float = DEFAULT_AMPLITUDE) -> np.ndarray:
    T = check_positive_int(T, "T")
    A = check_positive(A, "A")
    return A / (1.0 + np.exp(-np.arange(T, dtype=float)))


def gen_sinusoidal(
    T: int, A: float = DEFAULT_AMPLITUDE, b: float = math.pi / 6, c: float = math.pi / 2
) -> np.ndarray:
    T = check_positive_int(T, "T")
    A = check_positive(A, "A")
    return A * np.sin(b * np.arange(T, dtype=float) + c)


def load_csv(path) -> np.ndarray:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    values: list[float] = []
    last_k: int | None = None
    for lineno, row in enumerate(rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise CsvFormatError(f"{path}:{lineno}: expected 'timestamp,value', got {row!r}")
        try:
            k = int(row[0])
            v = float(row[1])
        except ValueError:
            if lineno == 1 and last_k is None:
                continue  # header
            raise CsvFormatError(f"{path}:{lineno}: unparseable row {row!r}") from None
        if not math.isfinite(v):
            raise CsvFormatError(f"{path}:{lineno}: non-finite value {row[1]!r}")
        if last_k is not None and k <= last_k:
            raise CsvFormatError(
                f"{path}:{lineno}: timestamp {k} does not increase (previous {last_k})"
            )
        last_k = k
        values.append(v)
    if not values:
        raise CsvFormatError(f"{path}: no data rows")
    return np.array(values)


def write_csv(path, values: Iterable[float], header: bool = True) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow(["k", "value"])
        for k, v in enumerate(values):
            w.writerow([k, repr(float(v))])


def write_release_log(path, records: list[ReleaseRecord], truth=None) -> None:
    """Write one row per release. ``truth`` adds an ``x`` column and is for evaluation only."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        cols = ["k"] + (["x"] if truth is not None else []) + [
            "r", "sampled", "budget_spent", "kind",
        ]
        w.writerow(cols)
        for rec in records:
            row = [rec.timestamp]
            if truth is not None:
                row.append(repr(float(truth[rec.timestamp])))
            row += [repr(rec.released), int(rec.sampled), repr(rec.budget_spent), rec.kind.value]
            w.writerow(row)
