"""Locating the smallest zeta zeros from per-lag moment profiles.

Around a lag whose difference distribution is centred on a zeta zero
the variance peaks, the kurtosis dips and the skewness turns from
positive to negative: each distribution leans towards its nearest zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .deltas import DeltaEnsemble
from .errors import InputError, InsufficientDataError

__all__ = [
    "MomentProfile",
    "ZeroCandidate",
    "MatchReport",
    "SignReport",
    "profiles",
    "detect_candidates",
    "skew_sign_structure",
    "match",
    "variance_stretch",
    "stretch_ratio",
    "default_smoothing",
]

VARIANCE_MAX = "variance_max"
KURTOSIS_MIN = "kurtosis_min"
SKEW_FLIP = "skew_flip"
PEAK_HALFWIDTH = 2
# relative differences below this count as ties, so rounding in the
# moving average cannot create or remove a peak
TIE_TOL = 1e-12


@dataclass(frozen=True)
class MomentProfile:
    """Per-lag statistics; NaN marks an undefined entry."""

    n: np.ndarray
    mean: np.ndarray
    variance: np.ndarray
    skewness: np.ndarray
    kurtosis: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("n", "mean", "variance", "skewness", "kurtosis"):
            a = np.array(getattr(self, name), dtype=np.int64 if name == "n" else np.float64)
            a.setflags(write=False)
            arrays[name] = a
            object.__setattr__(self, name, a)
        if len({len(a) for a in arrays.values()}) != 1:
            raise InputError("profile arrays must have equal length")

    @property
    def defined(self):
        return ~(np.isnan(self.variance) | np.isnan(self.skewness) | np.isnan(self.kurtosis))

    def __len__(self):
        return len(self.n)


@dataclass(frozen=True)
class ZeroCandidate:
    lag: int
    location: float
    evidence: frozenset
    score: int

    def to_record(self):
        return {"lag": self.lag, "location": self.location,
                "evidence": sorted(self.evidence), "score": self.score}


@dataclass(frozen=True)
class MatchReport:
    pairs: list
    unmatched_candidates: list
    unmatched_references: list

    def to_record(self):
        return {
            "pairs": [{"lag": c.lag, "location": c.location, "reference": r, "error": e}
                      for c, r, e in self.pairs],
            "unmatched_candidates": [c.lag for c in self.unmatched_candidates],
            "unmatched_references": list(self.unmatched_references),
        }


@dataclass(frozen=True)
class SignReport:
    n: np.ndarray
    expected: np.ndarray   # +1 / -1, 0 where excluded
    observed: np.ndarray
    consistent: np.ndarray  # bool, meaningful where expected != 0
    fraction: float
    used: int = field(default=0)


def _nan(v):
    return np.nan if v is None else v


def profiles(ensemble: DeltaEnsemble) -> MomentProfile:
    if ensemble.n_max < 3:
        raise InputError("a moment profile needs at least 3 lags")
    reps = ensemble.reports()
    return MomentProfile(
        n=[r.n for r in ensemble],
        mean=[_nan(r.mean) for r in reps],
        variance=[_nan(r.variance) for r in reps],
        skewness=[_nan(r.skewness) for r in reps],
        kurtosis=[_nan(r.kurtosis) for r in reps],
    )


def default_smoothing(sample_count: int) -> int:
    """Moving-average halfwidth: none for large samples, 1 at desk scale."""
    return 0 if sample_count >= 1_000_000 else 1


def _smooth(values: np.ndarray, halfwidth: int) -> np.ndarray:
    if halfwidth <= 0:
        return values.astype(np.float64)
    ok = ~np.isnan(values)
    kernel = np.ones(2 * halfwidth + 1)
    num = np.convolve(np.where(ok, values, 0.0), kernel, mode="same")
    den = np.convolve(ok.astype(np.float64), kernel, mode="same")
    with np.errstate(invalid="ignore", divide="ignore"):
        out = num / den
    return np.where(ok, out, np.nan)


def _strict_max(v: np.ndarray, k: int, halfwidth: int) -> bool:
    if np.isnan(v[k]) or k == 0 or k == len(v) - 1:
        return False
    lo, hi = max(0, k - halfwidth), min(len(v), k + halfwidth + 1)
    others = np.delete(v[lo:hi], k - lo)
    others = others[~np.isnan(others)]
    return bool(np.all(v[k] - others > TIE_TOL * abs(v[k])))


def _local_min(v: np.ndarray, j: int) -> bool:
    if j <= 0 or j >= len(v) - 1:
        return False
    margin = TIE_TOL * abs(v[j])
    return bool(v[j - 1] - v[j] > margin and v[j + 1] - v[j] > margin)


def detect_candidates(profile: MomentProfile, smoothing_halfwidth: int = 1):
    """Zero candidates at strict variance maxima (over +-2 lags).

    Evidence is added for a kurtosis local minimum within one lag and for
    a positive-to-negative skewness change within one lag. The
    candidate location is the mean of the lag's difference distribution.
    A strict maximum over +-2 lags already keeps candidates at least
    three lags apart, so a double peak yields only its higher lag.
    """
    if smoothing_halfwidth < 0:
        raise InputError("smoothing_halfwidth must be non-negative")
    var = _smooth(profile.variance, smoothing_halfwidth)
    kurt = _smooth(profile.kurtosis, smoothing_halfwidth)
    skew = _smooth(profile.skewness, smoothing_halfwidth)
    found = []
    for k in range(len(var)):
        if not _strict_max(var, k, PEAK_HALFWIDTH):
            continue
        evidence = {VARIANCE_MAX}
        if any(_local_min(kurt, j) for j in (k - 1, k, k + 1)):
            evidence.add(KURTOSIS_MIN)
        for j in (k - 1, k):
            if 0 <= j and j + 1 < len(skew) and skew[j] > 0 > skew[j + 1]:
                evidence.add(SKEW_FLIP)
        found.append((k, evidence))

    out = [ZeroCandidate(lag=int(profile.n[k]), location=float(profile.mean[k]),
                         evidence=frozenset(ev), score=len(ev))
           for k, ev in found]
    return sorted(out, key=lambda c: c.location)


def skew_sign_structure(profile: MomentProfile, reference_zeros: Sequence[float],
                        lags: Optional[Sequence[int]] = None) -> SignReport:
    """Check that each lag distribution is skewed towards its nearest zero.

    A lag whose mean lies below its nearest reference zero should have
    positive skewness, above it negative. Lags whose mean is exactly at
    a zero or a midpoint between zeros, lies beyond the last reference
    zero, or whose skewness is undefined are excluded.
    """
    refs = np.asarray(reference_zeros, dtype=np.float64)
    if len(refs) == 0:
        raise InputError("need at least one reference zero")
    if np.any(np.diff(refs) <= 0):
        raise InputError("reference zeros must be sorted and distinct")
    sel = np.ones(len(profile), dtype=bool)
    if lags is not None:
        sel = np.isin(profile.n, np.asarray(lags))
    n = profile.n[sel]
    mean = profile.mean[sel]
    skew = profile.skewness[sel]

    expected = np.zeros(len(n), dtype=np.int64)
    for i, m in enumerate(mean):
        if np.isnan(m) or np.isnan(skew[i]) or m > refs[-1]:
            continue
        k = np.searchsorted(refs, m)
        below = refs[k - 1] if k > 0 else -np.inf
        above = refs[k] if k < len(refs) else np.inf
        d_below, d_above = m - below, above - m
        if d_below == d_above or d_below == 0 or d_above == 0:
            continue
        expected[i] = 1 if d_above < d_below else -1
    observed = np.sign(np.nan_to_num(skew)).astype(np.int64)
    consistent = (expected != 0) & (observed == expected)
    used = int(np.count_nonzero(expected))
    fraction = float(consistent.sum() / used) if used else float("nan")
    return SignReport(n=n, expected=expected, observed=observed,
                      consistent=consistent, fraction=fraction, used=used)


def match(candidates: Sequence[ZeroCandidate], reference_zeros: Sequence[float],
          tolerance: float) -> MatchReport:
    """Greedy nearest-first matching of candidates to reference zeros.

    Pairs are taken in order of increasing distance; a tie goes to the
    lower reference. Each candidate and each reference is used once.
    """
    if not tolerance > 0:
        raise InputError("tolerance must be positive")
    refs = [float(r) for r in reference_zeros]
    options = []
    for ci, c in enumerate(candidates):
        for ri, r in enumerate(refs):
            d = abs(c.location - r)
            if d <= tolerance:
                options.append((d, ri, ci))
    options.sort()
    used_c, used_r, pairs = set(), set(), []
    for d, ri, ci in options:
        if ci in used_c or ri in used_r:
            continue
        used_c.add(ci)
        used_r.add(ri)
        pairs.append((candidates[ci], refs[ri], d))
    pairs.sort(key=lambda p: p[1])
    return MatchReport(
        pairs=pairs,
        unmatched_candidates=[c for i, c in enumerate(candidates) if i not in used_c],
        unmatched_references=[r for i, r in enumerate(refs) if i not in used_r],
    )


def stretch_ratio(peaks_a: Sequence[float], peaks_b: Sequence[float]) -> float:
    """Least-squares factor ``r`` minimizing ``sum (b_k - r a_k)**2``.

    Peaks are paired in order; surplus peaks of the longer list are ignored.
    """
    a = np.asarray(peaks_a, dtype=np.float64)
    b = np.asarray(peaks_b, dtype=np.float64)
    k = min(len(a), len(b))
    if k < 3:
        raise InsufficientDataError(
            f"need at least 3 variance peaks in each profile, got {len(a)} and {len(b)}")
    a, b = a[:k], b[:k]
    return float(np.dot(a, b) / np.dot(a, a))


PeakSource = Union[MomentProfile, Sequence[int]]


def _peak_lags(source: PeakSource, smoothing_halfwidth: int):
    if isinstance(source, MomentProfile):
        cands = detect_candidates(source, smoothing_halfwidth)
        return sorted(c.lag for c in cands)
    return sorted(int(v) for v in source)


def variance_stretch(profile_a: PeakSource, profile_b: PeakSource,
                     smoothing_halfwidth: int = 0) -> float:
    """How far the variance-peak lags of ``profile_b`` are stretched relative to ``profile_a``.

    Either argument may be a :class:`MomentProfile` (peaks are detected)
    or an explicit sequence of peak lags.
    """
    return stretch_ratio(_peak_lags(profile_a, smoothing_halfwidth),
                         _peak_lags(profile_b, smoothing_halfwidth))
