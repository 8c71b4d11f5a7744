"""Command line interface: ``zetadeltas <command> [options]``.

Commands
--------
validate   check a zero file and print gap statistics
deltas     per-lag moments, histograms and the integrated histogram
fit        Johnson fits per lag and the skewness-kurtosis plane
paircorr   pair correlation of unfolded differences vs Montgomery's R2
infer      zero candidates from the moment profiles

Any option can also be set through an environment variable named
``ZETADELTAS_<OPTION>`` (e.g. ``ZETADELTAS_WORKERS=8``); command line
flags take precedence. Exit codes: 0 success, 1 usage or I/O error,
2 validation failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from . import johnson
from .deltas import (
    DEFAULT_BIN_WIDTH, build_ensemble, default_binning, delta_stream, superpose,
)
from .errors import ParseError, ZetaDeltasError
from .histogram import BinningSpec
from .inference import (
    default_smoothing, detect_candidates, match, profiles, skew_sign_structure,
)
from .moments import report
from .paircorr import estimate
from .serialize import (
    HIST_COLUMNS, INTEGRATED_COLUMNS, MOMENT_COLUMNS, PAIRCORR_COLUMNS,
    header_lines, histogram_rows, integrated_rows, moments_rows, paircorr_rows,
    write_csv, write_json,
)
from .zeros import read_zero_table, validate, window

log = logging.getLogger("zetadeltas")

ENV_PREFIX = "ZETADELTAS_"
EXIT_OK, EXIT_ERROR, EXIT_INVALID = 0, 1, 2
BOUNDARY_POINTS = 200
MIN_FIT_MASS = 100


@dataclass
class RunConfig:
    input: str
    start: int = 1
    first_ordinal: int = 1
    count: Optional[int] = None
    nmax: Optional[int] = None
    bins: Optional[int] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    cutoff: float = 3.0
    out: str = "."
    seed: int = 0
    workers: int = 1
    reference: Optional[str] = None
    tolerance: float = 0.35
    smoothing: Optional[int] = None

    def __post_init__(self):
        for name in ("start", "first_ordinal", "workers"):
            if getattr(self, name) < 1:
                raise ZetaDeltasError(f"--{name.replace('_', '-')} must be positive")
        for name in ("count", "nmax", "bins"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ZetaDeltasError(f"--{name} must be positive")
        if self.start < self.first_ordinal:
            raise ZetaDeltasError("--start precedes the first ordinal in the file")
        if not self.cutoff > 0 or not self.tolerance > 0:
            raise ZetaDeltasError("--cutoff and --tolerance must be positive")

    def provenance(self):
        """Config fields that determine the output (workers and out do not)."""
        d = asdict(self)
        d.pop("workers")
        d.pop("out")
        return d


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _env(name, default):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _common(p, window_opts=True):
    p.add_argument("--input", default=_env("input", None), required=_env("input", None) is None,
                   help="plain zero file, one ordinate per line (.gz accepted)")
    if not window_opts:
        return
    p.add_argument("--start", type=int, default=int(_env("start", 1)),
                   help="1-based ordinal of the first zero of the window")
    p.add_argument("--first-ordinal", type=int, default=int(_env("first-ordinal", 1)),
                   help="ordinal of the first zero in the file")
    p.add_argument("--count", type=int, default=_env("count", None),
                   help="zeros in the window (default: rest of file)")
    p.add_argument("--nmax", type=int, default=_env("nmax", None), help="largest lag")
    p.add_argument("--bins", type=int, default=_env("bins", None), help="bin count")
    p.add_argument("--lo", type=float, default=_env("lo", None), help="lower histogram edge")
    p.add_argument("--hi", type=float, default=_env("hi", None), help="upper histogram edge")
    p.add_argument("--cutoff", type=float, default=float(_env("cutoff", 3.0)),
                   help="largest unfolded separation (paircorr)")
    p.add_argument("--out", default=_env("out", "."), help="output directory")
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--workers", type=int, default=int(_env("workers", 1)))


def build_parser():
    ap = _Parser(prog="zetadeltas", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a zero file")
    _common(p, window_opts=False)

    p = sub.add_parser("deltas", help="per-lag moments and histograms")
    _common(p)

    p = sub.add_parser("fit", help="Johnson fits per lag")
    _common(p)

    p = sub.add_parser("paircorr", help="pair correlation vs R2")
    _common(p)

    p = sub.add_parser("infer", help="zero candidates from moment profiles")
    _common(p)
    p.add_argument("--reference", default=_env("reference", None),
                   help="plain file of reference zeros to match against")
    p.add_argument("--tolerance", type=float, default=float(_env("tolerance", 0.35)))
    p.add_argument("--smoothing", type=int, default=_env("smoothing", None),
                   help="moving-average halfwidth (default: by window size)")
    return ap


def _config(args) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    kw = {k: v for k, v in vars(args).items() if k in fields}
    for k in ("count", "nmax", "bins", "smoothing"):
        if kw.get(k) is not None:
            kw[k] = int(kw[k])
    for k in ("lo", "hi"):
        if kw.get(k) is not None:
            kw[k] = float(kw[k])
    return RunConfig(**kw)


def _window(cfg: RunConfig):
    table = read_zero_table(cfg.input, start_ordinal=cfg.first_ordinal)
    start = cfg.start - cfg.first_ordinal
    count = cfg.count if cfg.count is not None else len(table) - start
    return table, window(table, start, count)


def _nmax(cfg, win, default=159):
    n = cfg.nmax if cfg.nmax is not None else min(default, win.count - 1)
    return n


def _binning(cfg, win, n_max):
    if cfg.lo is None and cfg.hi is None and cfg.bins is None:
        return default_binning(win, n_max)
    base = default_binning(win, n_max)
    lo = cfg.lo if cfg.lo is not None else base.lo
    hi = cfg.hi if cfg.hi is not None else base.hi
    bins = cfg.bins if cfg.bins is not None else max(1, int(round((hi - lo) / DEFAULT_BIN_WIDTH)))
    return BinningSpec(lo, hi, bins)


def _fit_binning(cfg, win, n_max):
    """Like :func:`_binning` but, by default, wide enough that no value overflows."""
    if cfg.lo is not None or cfg.hi is not None or cfg.bins is not None:
        return _binning(cfg, win, n_max)
    widest = float(np.max(delta_stream(win, n_max)))
    return BinningSpec.from_width(0.0, widest + DEFAULT_BIN_WIDTH, DEFAULT_BIN_WIDTH)


def _outdir(cfg):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_validate(args) -> int:
    try:
        table = read_zero_table(args.input, strict=False)
    except ParseError as exc:
        print(f"violation {exc}")
        print("status    INVALID")
        return EXIT_INVALID
    rep = validate(table)
    print(rep.format())
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_deltas(cfg: RunConfig) -> int:
    _, win = _window(cfg)
    n_max = _nmax(cfg, win)
    ens = build_ensemble(win, n_max, _binning(cfg, win, n_max), workers=cfg.workers)
    out = _outdir(cfg)
    head = header_lines("deltas", cfg.provenance())
    write_csv(out / "deltas_moments.csv", MOMENT_COLUMNS, moments_rows(ens), head)
    write_csv(out / "deltas_hist.csv", HIST_COLUMNS, histogram_rows(ens), head)
    integ = superpose(ens, 1, ens.n_max)
    write_csv(out / "deltas_integrated.csv", INTEGRATED_COLUMNS, integrated_rows(integ),
              head + [f"lags 1..{ens.n_max}"])
    log.info("wrote %d lags to %s", ens.n_max, out)
    return EXIT_OK


def fit_records(ens, s=johnson.DEFAULT_S):
    """Per-lag fit records and notes for lags that cannot be fitted."""
    records, notes = [], []
    for rec in ens:
        rep = report(rec.summary)
        if not rep.shape_defined:
            notes.append(f"lag {rec.n}: undefined statistics, skipped")
            continue
        if rec.histogram.mass < MIN_FIT_MASS:
            notes.append(f"lag {rec.n}: {rec.histogram.mass} values, too few to fit")
            continue
        try:
            params = johnson.fit_histogram(rec.histogram, rep, s=s)
            gof = johnson.goodness_of_fit(params, rec.histogram)
        except ZetaDeltasError as exc:
            notes.append(f"lag {rec.n}: {exc}")
            continue
        try:
            moment_family = str(johnson.select_family(rep.skewness, rep.kurtosis))
        except ZetaDeltasError:
            moment_family = None
        r = params.to_record()
        records.append({
            "lag": rec.n, "family": r["family"], "gamma": r["gamma"],
            "delta": r["delta"], "xi": r["xi"], "lambda": r["lambda"],
            "chi_square": gof.chi_square, "dof": gof.dof, "ks": gof.ks_statistic,
            "n_effective": gof.n_effective, "skewness": rep.skewness,
            "kurtosis": rep.kurtosis, "moment_family": moment_family,
        })
    return records, notes


def cmd_fit(cfg: RunConfig) -> int:
    _, win = _window(cfg)
    n_max = _nmax(cfg, win)
    ens = build_ensemble(win, n_max, _fit_binning(cfg, win, n_max), workers=cfg.workers)
    records, notes = fit_records(ens)
    for note in notes:
        log.warning(note)
    out = _outdir(cfg)
    head = header_lines("fit", cfg.provenance())
    write_json(out / "johnson_fits.json", {"fits": records, "notes": notes}, head)

    rows = []
    beta1_max = 0.0
    for rec in ens:
        rep = rec.report
        if not rep.shape_defined:
            continue
        b1 = rep.skewness ** 2
        beta1_max = max(beta1_max, b1)
        rows.append(("lag", rec.n, rep.skewness, b1, rep.kurtosis, rep.kurtosis - 3.0))
    b1s, b2s = johnson.sl_boundary_curve(max(beta1_max * 1.1, 1.0), BOUNDARY_POINTS)
    for b1, b2 in zip(b1s, b2s):
        rows.append(("boundary", None, float(np.sqrt(b1)), b1, b2, b2 - 3.0))
    write_csv(out / "skew_kurt_plane.csv",
              ("kind", "n", "skewness", "beta1", "kurtosis", "excess_kurtosis"),
              rows, head + ["boundary rows sample the SL (lognormal) curve"])
    return EXIT_OK


def cmd_paircorr(cfg: RunConfig) -> int:
    _, win = _window(cfg)
    bins = cfg.bins if cfg.bins is not None else 60
    res = estimate(win, cutoff=cfg.cutoff, bin_count=bins, n_max=cfg.nmax)
    out = _outdir(cfg)
    head = header_lines("paircorr", cfg.provenance())
    head += [f"n_max {res.n_max}", f"rms_deviation {res.rms_deviation!r}"]
    write_csv(out / "paircorr.csv", PAIRCORR_COLUMNS, paircorr_rows(res), head)
    return EXIT_OK


def cmd_infer(cfg: RunConfig) -> int:
    table, win = _window(cfg)
    n_max = _nmax(cfg, win)
    ens = build_ensemble(win, n_max, _binning(cfg, win, n_max), workers=cfg.workers)
    prof = profiles(ens)
    h = cfg.smoothing if cfg.smoothing is not None else default_smoothing(win.count)
    cands = detect_candidates(prof, h)
    doc = {"smoothing_halfwidth": h,
           "candidates": [c.to_record() for c in cands]}
    if cfg.reference:
        refs = read_zero_table(cfg.reference).ordinates
        # references beyond the largest lag cannot be seen by any candidate
        reach = float(np.nanmax(prof.mean)) + cfg.tolerance
        doc["match"] = match(cands, refs[refs <= reach], cfg.tolerance).to_record()
        doc["skew_consistency"] = skew_sign_structure(prof, refs).fraction
    out = _outdir(cfg)
    write_json(out / "zero_candidates.json", doc, header_lines("infer", cfg.provenance()))
    return EXIT_OK


def _kind(exc):
    """``LagError`` -> ``lag error``."""
    name = type(exc).__name__
    if name == "ZetaDeltasError":
        return "error"
    return re.sub(r"(?<!^)(?=[A-Z])", " ", name).lower()


COMMANDS = {"deltas": cmd_deltas, "fit": cmd_fit, "paircorr": cmd_paircorr,
            "infer": cmd_infer}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "validate":
            return cmd_validate(args)
        return COMMANDS[args.command](_config(args))
    except OSError as exc:
        print(f"zetadeltas: I/O error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ZetaDeltasError as exc:
        print(f"zetadeltas: {_kind(exc)}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
