"""Johnson distribution system (SL, SU, SB) and the normal limit.

A Johnson variable ``x`` maps to a standard normal ``z`` through

    z = gamma + delta * log(f(u)),    u = (x - xi) / lam

with ``f(u) = u`` (SL, lognormal), ``u + sqrt(1 + u**2)`` (SU, unbounded)
or ``u / (1 - u)`` (SB, bounded on ``xi < x < xi + lam``). The NORMAL
family is the linear limit ``z = gamma + delta * u``. SL carries no
independent scale, so its ``lam`` is fixed at 1.

Parameters are estimated from four symmetric quantiles with the
closed-form selection and estimation rules of Slifker and Shapiro
(Technometrics 22, 1980).
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import special

from .errors import DegenerateSampleError, DomainError, InputError
from .histogram import Histogram
from .moments import MomentReport

__all__ = [
    "JohnsonFamily",
    "JohnsonParams",
    "GoFReport",
    "DEFAULT_S",
    "pdf",
    "cdf",
    "ppf",
    "sample",
    "sl_boundary_kurtosis",
    "sl_boundary_curve",
    "select_family",
    "quantile_levels",
    "fit",
    "fit_histogram",
    "goodness_of_fit",
]

DEFAULT_S = 0.524
FAMILY_TOL = 1e-3
# relative tolerance on the quantile ratio m*n/p**2 for declaring SL/NORMAL
RATIO_TOL = 1e-9
_SQRT_2PI = math.sqrt(2.0 * math.pi)


class JohnsonFamily(str, enum.Enum):
    SL = "SL"
    SU = "SU"
    SB = "SB"
    NORMAL = "NORMAL"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class JohnsonParams:
    family: JohnsonFamily
    gamma: float
    delta: float
    xi: float
    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", JohnsonFamily(self.family))
        for name in ("gamma", "delta", "xi", "lam"):
            object.__setattr__(self, name, float(getattr(self, name)))
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not self.delta > 0:
            raise DomainError("delta must be positive")
        if not self.lam > 0:
            raise DomainError("lambda must be positive")

    @property
    def support(self):
        if self.family is JohnsonFamily.SL:
            return (self.xi, math.inf)
        if self.family is JohnsonFamily.SB:
            return (self.xi, self.xi + self.lam)
        return (-math.inf, math.inf)

    def to_record(self):
        d = asdict(self)
        d["family"] = str(self.family)
        d["lambda"] = d.pop("lam")
        return d


@dataclass(frozen=True)
class GoFReport:
    chi_square: float
    dof: int
    ks_statistic: float
    n_effective: int


def _transform(params: JohnsonParams, x):
    """Return (z, dz/dx, inside) on the support; z is 0 where outside."""
    x = np.asarray(x, dtype=np.float64)
    u = (x - params.xi) / params.lam
    fam = params.family
    g, d, lam = params.gamma, params.delta, params.lam
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if fam is JohnsonFamily.NORMAL:
            inside = np.isfinite(u)
            z = g + d * u
            dz = np.full_like(u, d / lam)
        elif fam is JohnsonFamily.SU:
            inside = np.isfinite(u)
            z = g + d * np.arcsinh(u)
            dz = d / (lam * np.sqrt(1.0 + u * u))
        elif fam is JohnsonFamily.SL:
            inside = u > 0
            z = g + d * np.log(u)
            dz = d / (lam * u)
        else:
            inside = (u > 0) & (u < 1)
            z = g + d * (np.log(u) - np.log1p(-u))
            dz = d / (lam * u * (1.0 - u))
    z = np.where(inside, z, 0.0)
    dz = np.where(inside, dz, 0.0)
    return z, dz, inside


def _scalar_or_array(out, x):
    return float(out) if np.ndim(x) == 0 else out


def pdf(params: JohnsonParams, x):
    """Density; exactly 0 outside the support."""
    z, dz, inside = _transform(params, x)
    out = np.where(inside, dz * np.exp(-0.5 * z * z) / _SQRT_2PI, 0.0)
    return _scalar_or_array(out, x)


def cdf(params: JohnsonParams, x):
    """``Phi(z(x))``; exactly 0 below and 1 above the support."""
    xa = np.asarray(x, dtype=np.float64)
    z, _, inside = _transform(params, xa)
    lo, hi = params.support
    out = np.where(inside, special.ndtr(z), np.where(xa >= hi, 1.0, 0.0))
    if params.family in (JohnsonFamily.SU, JohnsonFamily.NORMAL):
        out = np.where(xa == np.inf, 1.0, np.where(xa == -np.inf, 0.0, out))
    return _scalar_or_array(out, x)


def _inverse(params: JohnsonParams, z):
    y = (np.asarray(z, dtype=np.float64) - params.gamma) / params.delta
    fam = params.family
    if fam is JohnsonFamily.NORMAL:
        u = y
    elif fam is JohnsonFamily.SU:
        u = np.sinh(y)
    elif fam is JohnsonFamily.SL:
        u = np.exp(y)
    else:
        u = special.expit(y)
    return params.xi + params.lam * u


def ppf(params: JohnsonParams, q):
    out = _inverse(params, special.ndtri(np.asarray(q, dtype=np.float64)))
    return _scalar_or_array(out, q)


def sample(params: JohnsonParams, count: int, seed=None) -> np.ndarray:
    """``count`` draws; the same seed gives the same sequence."""
    if count < 1:
        raise InputError("count must be at least 1")
    z = np.random.default_rng(seed).standard_normal(int(count))
    x = _inverse(params, z)
    if params.family is JohnsonFamily.SB:
        # expit saturates to exactly 0 or 1 for |y| > ~37
        lo, hi = params.support
        x = np.clip(x, np.nextafter(lo, hi), np.nextafter(hi, lo))
    elif params.family is JohnsonFamily.SL:
        x = np.maximum(x, np.nextafter(params.xi, math.inf))
    return x


def _sl_beta1(w):
    return (w - 1.0) * (w + 2.0) ** 2


def _sl_beta2(w):
    return w ** 4 + 2.0 * w ** 3 + 3.0 * w ** 2 - 3.0


def sl_boundary_kurtosis(beta1: float) -> float:
    """Kurtosis of the lognormal with squared skewness ``beta1``.

    Solves ``beta1 = (w - 1)(w + 2)**2`` for ``w = exp(delta**-2) >= 1``
    by bisection and returns ``w**4 + 2 w**3 + 3 w**2 - 3``.
    """
    if beta1 < 0 or not math.isfinite(beta1):
        raise DomainError("beta1 must be a finite non-negative number")
    if beta1 == 0:
        return 3.0
    lo, hi = 1.0, 2.0
    while _sl_beta1(hi) < beta1:
        lo, hi = hi, 2.0 * hi
    while hi - lo > 1e-13 * hi:
        mid = 0.5 * (lo + hi)
        if _sl_beta1(mid) < beta1:
            lo = mid
        else:
            hi = mid
    return _sl_beta2(0.5 * (lo + hi))


def sl_boundary_curve(beta1_max: float, points: int = 200):
    """``points`` samples ``(beta1, beta2)`` of the SL curve from (0, 3)."""
    b1 = np.linspace(0.0, beta1_max, points)
    return b1, np.array([sl_boundary_kurtosis(b) for b in b1])


def select_family(skewness: float, kurtosis: float, tol: float = FAMILY_TOL) -> JohnsonFamily:
    """Johnson family for a (skewness, kurtosis) point by the SL curve.

    Above the lognormal curve is SU, below it SB.
    """
    beta1 = skewness * skewness
    if not kurtosis > 1.0 + beta1:
        raise DomainError(
            f"no distribution has skewness {skewness} and kurtosis {kurtosis}")
    if beta1 <= tol and abs(kurtosis - 3.0) <= tol:
        return JohnsonFamily.NORMAL
    boundary = sl_boundary_kurtosis(beta1)
    if abs(kurtosis - boundary) <= tol:
        return JohnsonFamily.SL
    return JohnsonFamily.SU if kurtosis > boundary else JohnsonFamily.SB


def quantile_levels(s: float = DEFAULT_S):
    """Probabilities at standard-normal points -3s, -s, s, 3s."""
    return special.ndtr(np.array([-3.0 * s, -s, s, 3.0 * s]))


def fit(summary: Optional[MomentReport], quantiles: Sequence[float],
        s: float = DEFAULT_S) -> JohnsonParams:
    """Johnson parameters from four quantiles at levels :func:`quantile_levels`.

    With ``m = x3 - x2``, ``n = x1 - x0`` and ``p = x2 - x1`` (quantiles in
    increasing order), ``m n / p**2`` above 1 selects SU, below 1 SB, and
    equal to 1 SL (or NORMAL when ``m = n = p``). The four quantiles are
    reproduced exactly by SU and SB. ``summary`` only serves to reject a
    zero-spread sample early; pass None to skip.
    """
    q = np.asarray(quantiles, dtype=np.float64)
    if q.shape != (4,) or not np.all(np.isfinite(q)):
        raise InputError("need four finite quantiles")
    if summary is not None and summary.variance is not None and summary.variance <= 0:
        raise DegenerateSampleError("sample has zero spread")
    if not np.all(np.diff(q) > 0):
        raise InputError(f"quantiles must be strictly increasing, got {q.tolist()}")
    if not s > 0:
        raise InputError("quantile spacing s must be positive")
    x_m3, x_m1, x_p1, x_p3 = q
    m = x_p3 - x_p1
    n = x_m1 - x_m3
    p = x_p1 - x_m1
    mid = 0.5 * (x_p1 + x_m1)
    mp, np_ = m / p, n / p
    ratio = mp * np_
    z = s

    if abs(mp - 1.0) <= RATIO_TOL and abs(np_ - 1.0) <= RATIO_TOL:
        sigma = p / (2.0 * z)
        return JohnsonParams(JohnsonFamily.NORMAL, 0.0, 1.0, mid, sigma)

    if abs(ratio - 1.0) <= RATIO_TOL:
        if mp < 1.0:
            # the reflected lognormal is not a member of the system
            raise DegenerateSampleError("left-skewed lognormal quantiles cannot be fitted")
        delta = 2.0 * z / math.log(mp)
        gamma = delta * math.log((mp - 1.0) / (p * math.sqrt(mp)))
        xi = mid - 0.5 * p * (mp + 1.0) / (mp - 1.0)
        return JohnsonParams(JohnsonFamily.SL, gamma, delta, xi, 1.0)

    if ratio > 1.0:
        t = mp + np_
        delta = 2.0 * z / math.acosh(0.5 * t)
        root = math.sqrt(ratio - 1.0)
        gamma = delta * math.asinh((np_ - mp) / (2.0 * root))
        lam = 2.0 * p * root / ((t - 2.0) * math.sqrt(t + 2.0))
        xi = mid + p * (np_ - mp) / (2.0 * (t - 2.0))
        return JohnsonParams(JohnsonFamily.SU, gamma, delta, xi, lam)

    pm, pn = p / m, p / n
    prod = (1.0 + pm) * (1.0 + pn)
    denom = pm * pn - 1.0
    delta = z / math.acosh(0.5 * math.sqrt(prod))
    gamma = delta * math.asinh((pn - pm) * math.sqrt(prod - 4.0) / (2.0 * denom))
    lam = p * math.sqrt((prod - 2.0) ** 2 - 4.0) / denom
    xi = mid - 0.5 * lam + p * (pn - pm) / (2.0 * denom)
    return JohnsonParams(JohnsonFamily.SB, gamma, delta, xi, lam)


def fit_histogram(histogram: Histogram, summary: Optional[MomentReport] = None,
                  s: float = DEFAULT_S) -> JohnsonParams:
    """Fit from quantiles interpolated inside the histogram bins."""
    return fit(summary, histogram.quantile(quantile_levels(s)), s=s)


def goodness_of_fit(params: JohnsonParams, histogram: Histogram,
                    min_expected: float = 5.0) -> GoFReport:
    """Pooled chi-square and edge-sampled KS distance of a histogram vs a fit.

    Underflow and overflow count as the two tail cells. Adjacent cells
    are pooled left to right until each holds an expected count of at
    least ``min_expected``.
    """
    total = histogram.mass
    if total < 100:
        raise InputError(f"goodness of fit needs a histogram mass >= 100, got {total}")
    edges = histogram.binning.edges
    F = cdf(params, edges)
    expected = total * np.concatenate([[F[0]], np.diff(F), [1.0 - F[-1]]])
    observed = np.concatenate([[histogram.underflow], histogram.counts,
                               [histogram.overflow]]).astype(np.float64)

    groups_o, groups_e = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            groups_o.append(acc_o)
            groups_e.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if groups_e:
            groups_o[-1] += acc_o
            groups_e[-1] += acc_e
        else:
            groups_o.append(acc_o)
            groups_e.append(acc_e)
    go = np.array(groups_o)
    ge = np.array(groups_e)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(ge > 0, (go - ge) ** 2 / ge, np.where(go > 0, np.inf, 0.0))
    chi2 = float(terms.sum())
    ks = float(np.max(np.abs(histogram.ecdf_at_edges() - F)))
    return GoFReport(chi_square=chi2, dof=len(go) - 1 - 4,
                     ks_statistic=min(max(ks, 0.0), 1.0), n_effective=total)
