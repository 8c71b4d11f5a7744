"""Pair correlation of unfolded zero differences against Montgomery's R2."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .deltas import default_nmax, scaled_delta_stream
from .errors import DomainError, InputError
from .histogram import BinningSpec, Histogram
from .zeros import ZeroWindow

__all__ = ["PairCorrelationResult", "r2_theory", "estimate", "RMS_FROM"]

RMS_FROM = 0.2


def r2_theory(x):
    """``1 - (sin(pi x) / (pi x))**2``, with value 0 at x = 0."""
    xa = np.asarray(x, dtype=np.float64)
    out = 1.0 - np.sinc(xa) ** 2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PairCorrelationResult:
    histogram: Histogram
    normalized_density: np.ndarray
    theory: np.ndarray
    rms_deviation: float
    n_max: int
    zeros: int

    @property
    def centers(self):
        return self.histogram.binning.centers


def rms_deviation(centers, empirical, theory, lo=RMS_FROM, hi=None):
    sel = centers >= lo
    if hi is not None:
        sel &= centers <= hi
    if not np.any(sel):
        raise InputError("no bins inside the rms window")
    return float(np.sqrt(np.mean((empirical[sel] - theory[sel]) ** 2)))


def estimate(window: ZeroWindow, cutoff: float = 3.0, bin_count: int = 60,
             n_max: Optional[int] = None) -> PairCorrelationResult:
    """Histogram of unfolded differences up to ``cutoff``, normalized per zero.

    ``normalized_density = counts / (zeros * bin_width)``, which tends to 1
    at large separation for unit mean spacing. ``n_max`` defaults to the
    smallest lag that never comes within ``cutoff``.
    """
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    if bin_count < 10:
        raise InputError("bin_count must be at least 10")
    if n_max is None:
        n_max = default_nmax(window, cutoff)
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    values = scaled_delta_stream(window, n_max, cutoff)
    binning = BinningSpec(0.0, float(cutoff), int(bin_count))
    hist = Histogram.of(binning, values)
    # values equal to cutoff land in overflow; fold them into the last bin
    if hist.overflow:
        counts = hist.counts.copy()
        counts[-1] += hist.overflow
        hist = Histogram(binning, counts, hist.underflow, 0)
    density = hist.counts / (window.count * binning.width)
    theory = r2_theory(binning.centers)
    rms = rms_deviation(binning.centers, density, theory, hi=cutoff)
    return PairCorrelationResult(hist, density, theory, rms, int(n_max), window.count)
