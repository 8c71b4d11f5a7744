"""Generate a plain-format table of N consecutive zeta zero ordinates.

Test-data tooling, not part of the library. Zeros are bracketed on a
grid of Riemann-Siegel Z evaluations (numpy, with the C0..C3 remainder
terms), refined by vectorized bisection, and then checked:

* the total count against ``mpmath.nzeros`` at both ends,
* a spread of individual ordinates against ``mpmath.zetazero``.

For a table starting at ordinal 1 the first zeros come straight from
``mpmath.zetazero`` because the asymptotic remainder is too coarse at
very low height.

Usage::

    python tools/generate_zeros.py 100000 data/zeros_first_100000.txt.gz
    python tools/generate_zeros.py --start 1747147 100000 data/zeros_1747147_100000.txt.gz
"""

import argparse
import gzip
import math
import sys

import mpmath
import numpy as np

TWO_PI = 2.0 * math.pi
EXACT_HEAD = 1000         # zeros taken directly from mpmath
SAMPLES_PER_SPACING = 16
CHUNK = 20000


def _psi_taylor(order=60, dps=60):
    """Taylor coefficients of cos(2pi(p^2-p-1/16))/cos(2pi p) around p=1/2."""
    with mpmath.workdps(dps):
        def psi(p):
            return mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)
        # entire in p, so one expansion covers [0, 1]
        coeffs = mpmath.taylor(psi, mpmath.mpf(1) / 2, order)
    return [float(c) for c in coeffs]


_PSI = np.polynomial.Polynomial(_psi_taylor())


def _psi_deriv(k):
    return _PSI.deriv(k) if k else _PSI


_D = {k: _psi_deriv(k) for k in (0, 1, 2, 3, 5, 6, 9)}
_PI2 = math.pi ** 2


def theta(t):
    return t / 2 * np.log(t / TWO_PI) - t / 2 - math.pi / 8 + 1 / (48 * t) + 7 / (5760 * t ** 3)


def siegel_z(t):
    """Riemann-Siegel Z(t) for an array of t (t > ~100)."""
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / TWO_PI)
    big_n = np.floor(a).astype(np.int64)
    frac = a - big_n
    th = theta(t)
    nmax = int(big_n.max())
    out = np.zeros_like(t)
    logs = np.log(np.arange(1, nmax + 1, dtype=float))
    for k in range(1, nmax + 1):
        active = big_n >= k
        term = np.cos(th - t * logs[k - 1]) / math.sqrt(k)
        out += np.where(active, term, 0.0)
    out *= 2.0
    x = frac - 0.5
    c0 = _D[0](x)
    c1 = -_D[3](x) / (96 * _PI2)
    c2 = _D[2](x) / (64 * _PI2) + _D[6](x) / (18432 * _PI2 ** 2)
    c3 = (-_D[1](x) / (64 * _PI2) - _D[5](x) / (3840 * _PI2 ** 2)
          - _D[9](x) / (5308416 * _PI2 ** 3))
    inv = 1.0 / a
    rem = c0 + inv * (c1 + inv * (c2 + inv * c3))
    sign = np.where(big_n % 2 == 1, 1.0, -1.0)  # (-1)^(N-1)
    return out + sign * rem / np.sqrt(a)


def _brackets(t0, t1):
    """Sign-change brackets of Z on [t0, t1], densifying suspicious cells."""
    spacing = TWO_PI / math.log(t1 / TWO_PI)
    h = spacing / SAMPLES_PER_SPACING
    grid = np.append(np.arange(t0, t1, h), t1)
    z = siegel_z(grid)
    lo, hi = [], []
    sc = np.nonzero(np.sign(z[:-1]) != np.sign(z[1:]))[0]
    lo.append(grid[sc])
    hi.append(grid[sc + 1])
    # a local minimum of |Z| without a sign change may hide a close pair
    az = np.abs(z)
    cand = np.nonzero((az[1:-1] < az[:-2]) & (az[1:-1] < az[2:])
                      & (np.sign(z[:-2]) == np.sign(z[1:-1]))
                      & (np.sign(z[1:-1]) == np.sign(z[2:])))[0] + 1
    for i in cand:
        fine = np.linspace(grid[i - 1], grid[i + 1], 257)
        zf = siegel_z(fine)
        s = np.nonzero(np.sign(zf[:-1]) != np.sign(zf[1:]))[0]
        if len(s):
            lo.append(fine[s])
            hi.append(fine[s + 1])
    lo = np.concatenate(lo)
    hi = np.concatenate(hi)
    order = np.argsort(lo)
    return lo[order], hi[order]


def _refine(lo, hi, iters=60):
    zlo = siegel_z(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        zm = siegel_z(mid)
        left = np.sign(zm) == np.sign(zlo)
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid)
        if np.max(hi - lo) < 1e-12:
            break
    return 0.5 * (lo + hi)


def _zero(k):
    return float(mpmath.zetazero(int(k)).imag)


def generate(count, start=1):
    if start == 1:
        found = [_zero(k) for k in range(1, EXACT_HEAD + 1)]
        # continue halfway between the last exact zero and its successor
        t = 0.5 * (found[-1] + _zero(EXACT_HEAD + 1))
    else:
        found = []
        t = 0.5 * (_zero(start - 1) + _zero(start))
    while len(found) < count:
        spacing = TWO_PI / math.log(t / TWO_PI)
        t_end = t + CHUNK * spacing
        lo, hi = _brackets(t, t_end)
        found.extend(_refine(lo, hi).tolist())
        t = t_end
        print(f"{len(found)} zeros up to t={t:.1f}", file=sys.stderr)
    return np.array(found[:count])


def check(zeros, start=1, spots=40, seed=0):
    n = len(zeros)
    last = start + n - 1
    expected = int(mpmath.nzeros(0.5 * (zeros[-1] + zeros[-2])))
    if expected != last - 1:
        raise SystemExit(f"count mismatch: nzeros={expected}, last ordinal {last}")
    if start > 1:
        below = int(mpmath.nzeros(0.5 * (zeros[0] + zeros[1])))
        if below != start:
            raise SystemExit(f"start mismatch: nzeros={below}, first ordinal {start}")
    if np.any(np.diff(zeros) <= 0):
        raise SystemExit("table not strictly increasing")
    rng = np.random.default_rng(seed)
    first_rs = start + EXACT_HEAD if start == 1 else start
    idx = np.unique(np.concatenate([[first_rs - 1, first_rs, last],
                                    rng.integers(first_rs, last + 1, spots)]))
    idx = idx[idx >= start]
    worst = 0.0
    for k in idx:
        worst = max(worst, abs(_zero(k) - zeros[k - start]))
    print(f"count ok ({n}); worst spot error {worst:.2e} over {len(idx)} indices",
          file=sys.stderr)
    if worst > 1e-8:
        raise SystemExit("spot check failed")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=1, help="ordinal of the first zero")
    ap.add_argument("count", type=int)
    ap.add_argument("output")
    args = ap.parse_args()
    if args.start < 1:
        ap.error("--start must be at least 1")
    zeros = generate(args.count, args.start)
    check(zeros, args.start)
    opener = gzip.open if args.output.endswith(".gz") else open
    with opener(args.output, "wt", encoding="utf-8") as fh:
        if args.start == 1:
            fh.write(f"# first {args.count} nontrivial zeta zero ordinates\n")
        else:
            last = args.start + args.count - 1
            fh.write(f"# nontrivial zeta zero ordinates {args.start}..{last}\n")
        fh.write("# generated by tools/generate_zeros.py (Riemann-Siegel, mpmath-checked)\n")
        for z in zeros:
            fh.write(f"{z:.9f}\n")


if __name__ == "__main__":
    main()
