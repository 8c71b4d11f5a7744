"""Per-lag distributions of zero differences ``gamma(i + n) - gamma(i)``.

Differences are taken between offsets of the same table, so the integer
base cancels exactly and precision does not depend on height.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, LagError, RangeError
from .histogram import BinningSpec, Histogram
from .moments import EMPTY, MomentReport, MomentSummary, merge, report, summarize
from .zeros import ZeroWindow, mean_density

__all__ = [
    "DEFAULT_BIN_WIDTH",
    "LagRecord",
    "DeltaEnsemble",
    "delta_stream",
    "default_binning",
    "build_ensemble",
    "superpose",
    "scaled_delta_stream",
    "default_nmax",
]

DEFAULT_BIN_WIDTH = 0.05
# fixed index-range split; independent of the worker count
CHUNK = 1 << 16


def delta_stream(window: ZeroWindow, n: int) -> np.ndarray:
    """All lag-``n`` differences of the window, in index order (``count - n`` values)."""
    n = int(n)
    if n < 1 or n >= window.count:
        raise LagError(f"lag {n} needs 1 <= n < window count {window.count}")
    off = window.offsets
    return off[n:] - off[:-n]


def default_binning(window: ZeroWindow, n_max: int, width: float = DEFAULT_BIN_WIDTH):
    off = window.offsets
    mean_gap = (off[-1] - off[0]) / (len(off) - 1)
    return BinningSpec.from_width(0.0, (n_max + 5) * mean_gap, width)


@dataclass(frozen=True)
class LagRecord:
    n: int
    summary: MomentSummary
    histogram: Histogram

    @property
    def report(self) -> MomentReport:
        return report(self.summary)


@dataclass(frozen=True)
class DeltaEnsemble:
    window: dict
    n_max: int
    binning: BinningSpec
    records: tuple

    def __getitem__(self, n) -> LagRecord:
        if not 1 <= n <= self.n_max:
            raise LagError(f"lag {n} outside 1..{self.n_max}")
        return self.records[n - 1]

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return self.n_max

    def reports(self):
        return [r.report for r in self.records]


def _lag_record(off: np.ndarray, n: int, binning: BinningSpec, chunk: int) -> LagRecord:
    m = len(off) - n
    summary = EMPTY
    hist = Histogram.empty(binning)
    for start in range(0, m, chunk):
        stop = min(start + chunk, m)
        d = off[start + n:stop + n] - off[start:stop]
        summary = merge(summary, summarize(d, chunk=chunk))
        hist = hist.fill(d)
    return LagRecord(n, summary, hist)


def build_ensemble(window: ZeroWindow, n_max: int,
                   binning: Optional[BinningSpec] = None, workers: int = 1,
                   chunk: int = CHUNK) -> DeltaEnsemble:
    """Moment summary and histogram of the lag-n differences for n = 1..n_max.

    Lags run in parallel when ``workers > 1``; each lag is reduced over
    the same fixed index chunks in the same order, so the output does not
    depend on ``workers``.
    """
    n_max = int(n_max)
    if n_max < 1 or n_max >= window.count:
        raise LagError(f"n_max {n_max} needs 1 <= n_max < window count {window.count}")
    if binning is None:
        binning = default_binning(window, n_max)
    off = window.offsets

    def one(n):
        return _lag_record(off, n, binning, chunk)

    lags = range(1, n_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = tuple(pool.map(one, lags))
    else:
        records = tuple(one(n) for n in lags)
    return DeltaEnsemble(window.describe(), n_max, binning, records)


def superpose(ensemble: DeltaEnsemble, n_from: int, n_to: int) -> Histogram:
    """Bin-wise sum of the lag histograms for ``n_from <= n <= n_to``."""
    if not 1 <= n_from <= n_to <= ensemble.n_max:
        raise RangeError(
            f"need 1 <= n_from <= n_to <= {ensemble.n_max}, got {n_from}..{n_to}")
    out = ensemble[n_from].histogram
    for n in range(n_from + 1, n_to + 1):
        out = out + ensemble[n].histogram
    return out


def scaled_delta_stream(window: ZeroWindow, n_max: int, cutoff: float) -> np.ndarray:
    """Unit-mean-spacing differences not exceeding ``cutoff``.

    Each difference ``gamma(i + n) - gamma(i)`` is multiplied by the mean
    zero density at ``gamma(i)``. Values are grouped by lag, in index
    order within a lag.
    """
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    n_max = min(int(n_max), window.count - 1)
    off = window.offsets
    rho = mean_density(window.ordinates)
    parts = []
    for n in range(1, n_max + 1):
        s = (off[n:] - off[:-n]) * rho[:-n]
        parts.append(s[s <= cutoff])
    if not parts:
        return np.empty(0)
    return np.concatenate(parts)


def default_nmax(window: ZeroWindow, cutoff: float) -> int:
    """Smallest lag whose minimum scaled difference exceeds ``cutoff``."""
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    off = window.offsets
    rho = mean_density(window.ordinates)
    for n in range(1, window.count):
        if np.min((off[n:] - off[:-n]) * rho[:-n]) > cutoff:
            return n
    return window.count - 1
