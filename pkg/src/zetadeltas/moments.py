"""Mergeable one-pass central moments up to order four.

A :class:`MomentSummary` holds ``count``, ``mean`` and the centered
power sums ``m2 = sum (x - mean)**2`` and likewise ``m3``, ``m4``.
Summaries combine with :func:`merge` (pairwise update of Chan, Golub
and LeVeque, extended to fourth order by Pebay), so a large sample can
be reduced in chunks, in any tree shape, in parallel.

Reported statistics use population (1/N) normalization and full
kurtosis (normal = 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import InputError

__all__ = [
    "MomentSummary",
    "MomentReport",
    "EMPTY",
    "accumulate",
    "accumulate_many",
    "summarize",
    "merge",
    "merge_all",
    "report",
]

CHUNK = 1 << 16


@dataclass(frozen=True)
class MomentSummary:
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    m3: float = 0.0
    m4: float = 0.0

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if self.count == 0 and (self.mean or self.m2 or self.m3 or self.m4):
            raise ValueError("an empty summary carries no moments")

    def report(self) -> "MomentReport":
        return report(self)


EMPTY = MomentSummary()


@dataclass(frozen=True)
class MomentReport:
    """Derived statistics; ``None`` marks a statistic the sample cannot define."""

    count: int
    mean: Optional[float]
    variance: Optional[float]
    skewness: Optional[float]
    kurtosis: Optional[float]

    @property
    def excess_kurtosis(self):
        return None if self.kurtosis is None else self.kurtosis - 3.0

    @property
    def std(self):
        return None if self.variance is None else math.sqrt(self.variance)

    @property
    def shape_defined(self):
        return self.skewness is not None and self.kurtosis is not None


def accumulate(summary: MomentSummary, x: float) -> MomentSummary:
    """Return ``summary`` extended by one observation."""
    return accumulate_many(summary, (x,))


def accumulate_many(summary: MomentSummary, values: Iterable[float]) -> MomentSummary:
    """Feed ``values`` one at a time through the Welford/Pebay update.

    ``mean + mean_lo`` is the running mean, with ``mean_lo`` holding the
    rounding error of ``mean``, so a long stream far from the origin keeps
    its full relative accuracy.
    """
    n, mean, m2, m3, m4 = summary.count, summary.mean, summary.m2, summary.m3, summary.m4
    mean_lo = 0.0
    isfinite = math.isfinite
    for x in values:
        x = float(x)
        if not isfinite(x):
            raise InputError(f"non-finite observation {x!r}")
        n += 1
        delta = (x - mean) - mean_lo
        delta_n = delta / n
        delta_n2 = delta_n * delta_n
        term = delta * delta_n * (n - 1)
        m4 = m4 + term * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2 - 4 * delta_n * m3
        if m4 < 0.0:
            m4 = 0.0
        m3 = m3 + term * delta_n * (n - 2) - 3 * delta_n * m2
        m2 = m2 + term
        # error-free sum of mean and delta_n (Knuth's two-sum)
        total = mean + delta_n
        back = total - mean
        mean_lo += (mean - (total - back)) + (delta_n - back)
        mean = total
    return MomentSummary(n, mean + mean_lo, m2, m3, m4)


def _summarize_chunk(x: np.ndarray) -> MomentSummary:
    n = len(x)
    mean = float(np.mean(x))
    d = x - mean
    # one correction step absorbs the rounding error of the first mean
    corr = float(np.sum(d)) / n
    mean += corr
    d = d - corr
    d2 = d * d
    return MomentSummary(n, mean, float(np.sum(d2)), float(np.sum(d2 * d)),
                         float(np.sum(d2 * d2)))


def summarize(values, chunk: int = CHUNK) -> MomentSummary:
    """Summary of an array, reduced over fixed-size chunks in index order.

    The chunking depends only on ``len(values)`` and ``chunk``, so the
    result is bit-reproducible.
    """
    x = np.asarray(values, dtype=np.float64).ravel()
    if len(x) == 0:
        return EMPTY
    if not np.all(np.isfinite(x)):
        raise InputError("non-finite observation in sample")
    out = EMPTY
    for start in range(0, len(x), chunk):
        out = merge(out, _summarize_chunk(x[start:start + chunk]))
    return out


def merge(a: MomentSummary, b: MomentSummary) -> MomentSummary:
    """Summary of the concatenation of the samples behind ``a`` and ``b``."""
    if b.count == 0:
        return a
    if a.count == 0:
        return b
    na, nb = a.count, b.count
    n = na + nb
    delta = b.mean - a.mean
    delta_n = delta / n
    nanb = na * nb
    mean = a.mean + delta_n * nb
    m2 = a.m2 + b.m2 + delta * delta_n * nanb
    m3 = (a.m3 + b.m3 + delta * delta_n * delta_n * nanb * (na - nb)
          + 3.0 * delta_n * (na * b.m2 - nb * a.m2))
    m4 = (a.m4 + b.m4
          + delta * delta_n ** 3 * nanb * (na * na - nanb + nb * nb)
          + 6.0 * delta_n * delta_n * (na * na * b.m2 + nb * nb * a.m2)
          + 4.0 * delta_n * (na * b.m3 - nb * a.m3))
    return MomentSummary(n, mean, max(m2, 0.0), m3, max(m4, 0.0))


def merge_all(summaries: Iterable[MomentSummary]) -> MomentSummary:
    out = EMPTY
    for s in summaries:
        out = merge(out, s)
    return out


def report(summary: MomentSummary) -> MomentReport:
    n = summary.count
    if n == 0:
        return MomentReport(0, None, None, None, None)
    mean = summary.mean
    if n < 2:
        return MomentReport(n, mean, None, None, None)
    var = summary.m2 / n
    if n < 3 or summary.m2 <= 0.0:
        return MomentReport(n, mean, var, None, None)
    skew = (summary.m3 / n) / var ** 1.5
    kurt = (summary.m4 / n) / (var * var)
    return MomentReport(n, mean, var, skew, kurt)
