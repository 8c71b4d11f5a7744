"""Uniform-bin histograms with explicit underflow and overflow."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, RangeError

__all__ = ["BinningSpec", "Histogram"]


@dataclass(frozen=True)
class BinningSpec:
    lo: float
    hi: float
    bin_count: int

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or not self.lo < self.hi:
            raise InputError(f"binning needs lo < hi, got [{self.lo}, {self.hi}]")
        if int(self.bin_count) != self.bin_count or self.bin_count < 1:
            raise InputError("bin_count must be a positive integer")

    @classmethod
    def from_width(cls, lo, hi, width):
        """Bins of exactly ``width`` starting at ``lo``; ``hi`` is rounded up."""
        count = int(np.ceil((hi - lo) / width - 1e-9))
        count = max(count, 1)
        return cls(float(lo), float(lo + count * width), count)

    @property
    def width(self):
        return (self.hi - self.lo) / self.bin_count

    @property
    def edges(self):
        return np.linspace(self.lo, self.hi, self.bin_count + 1)

    @property
    def centers(self):
        e = self.edges
        return 0.5 * (e[:-1] + e[1:])

    def index(self, values):
        """Bin index per value: -1 for underflow, ``bin_count`` for overflow."""
        v = np.asarray(values, dtype=np.float64)
        idx = np.floor((v - self.lo) / self.width).astype(np.int64)
        idx = np.where(v < self.lo, -1, idx)
        idx = np.where(v >= self.hi, self.bin_count, idx)
        # guard against rounding just inside either end
        return np.clip(idx, -1, self.bin_count)


@dataclass(frozen=True, eq=False)
class Histogram:
    binning: BinningSpec
    counts: np.ndarray
    underflow: int = 0
    overflow: int = 0

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (self.binning.bin_count,):
            raise InputError("counts length must equal bin_count")
        if np.any(counts < 0) or self.underflow < 0 or self.overflow < 0:
            raise InputError("histogram counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def empty(cls, binning):
        return cls(binning, np.zeros(binning.bin_count, dtype=np.int64))

    @classmethod
    def of(cls, binning, values):
        return cls.empty(binning).fill(values)

    def fill(self, values):
        idx = self.binning.index(values)
        full = np.bincount(idx + 1, minlength=self.binning.bin_count + 2)
        return Histogram(self.binning, self.counts + full[1:-1],
                         self.underflow + int(full[0]),
                         self.overflow + int(full[-1]))

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return (self.binning == other.binning
                and np.array_equal(self.counts, other.counts)
                and self.underflow == other.underflow
                and self.overflow == other.overflow)

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        if other.binning != self.binning:
            raise RangeError("cannot add histograms with different binning")
        return Histogram(self.binning, self.counts + other.counts,
                         self.underflow + other.underflow,
                         self.overflow + other.overflow)

    @property
    def mass(self):
        return int(self.counts.sum()) + self.underflow + self.overflow

    @property
    def in_range(self):
        return int(self.counts.sum())

    def density(self):
        """Counts normalized to unit area over all accumulated values."""
        return self.counts / (self.mass * self.binning.width)

    def ecdf_at_edges(self):
        """Fraction of all values below each bin edge."""
        cum = np.concatenate([[0], np.cumsum(self.counts)]) + self.underflow
        return cum / self.mass

    def quantile(self, probs):
        """Quantiles by linear interpolation inside bins.

        Probabilities falling in the underflow or overflow mass cannot be
        located and raise :class:`InputError`.
        """
        p = np.atleast_1d(np.asarray(probs, dtype=np.float64))
        if self.mass == 0:
            raise InputError("empty histogram has no quantiles")
        cdf = self.ecdf_at_edges()
        edges = self.binning.edges
        if np.any(p < cdf[0]) or np.any(p > cdf[-1]):
            raise InputError("quantile lies in underflow/overflow mass")
        # right-most edge with cdf <= p, then interpolate across that bin
        k = np.searchsorted(cdf, p, side="right") - 1
        k = np.clip(k, 0, self.binning.bin_count - 1)
        lo_c, hi_c = cdf[k], cdf[k + 1]
        span = hi_c - lo_c
        frac = np.where(span > 0, (p - lo_c) / np.where(span > 0, span, 1.0), 0.0)
        return edges[k] + frac * self.binning.width
