"""Plot-ready CSV and JSON writers.

Every CSV starts with ``#`` header lines naming the tool version and the
run configuration. JSON documents carry the same header under a
top-level ``"header"`` key. Floats are written with ``repr`` (shortest
round-trip form), so equal inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Optional

import numpy as np

from . import __version__
from .deltas import DeltaEnsemble
from .histogram import Histogram
from .paircorr import PairCorrelationResult

__all__ = [
    "header_lines",
    "fmt",
    "write_csv",
    "write_json",
    "moments_rows",
    "histogram_rows",
    "integrated_rows",
    "paircorr_rows",
]

TOOL = "zetadeltas"


def header_lines(command: str, config: Optional[dict] = None):
    lines = [f"{TOOL} {__version__} {command}"]
    if config:
        lines.append("config " + json.dumps(config, sort_keys=True))
    return lines


def fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return ""
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(value)


def write_csv(path, columns: Iterable[str], rows: Iterable, header: Iterable[str] = ()):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return None if not math.isfinite(v) else v
    return obj


def write_json(path, document: dict, header: Iterable[str] = ()):
    doc = {"header": list(header)}
    doc.update(document)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_jsonable(doc), fh, indent=1, sort_keys=False)
        fh.write("\n")


MOMENT_COLUMNS = ("n", "count", "mean", "variance", "skewness", "kurtosis",
                  "excess_kurtosis")


def moments_rows(ensemble: DeltaEnsemble):
    for rec in ensemble:
        r = rec.report
        yield (rec.n, r.count, r.mean, r.variance, r.skewness, r.kurtosis,
               r.excess_kurtosis)


HIST_COLUMNS = ("n", "bin_lo", "bin_hi", "count")


def _bins(hist: Histogram):
    edges = hist.binning.edges
    if hist.underflow:
        yield (-math.inf, edges[0], hist.underflow)
    for lo, hi, c in zip(edges[:-1], edges[1:], hist.counts):
        yield (lo, hi, c)
    if hist.overflow:
        yield (edges[-1], math.inf, hist.overflow)


def histogram_rows(ensemble: DeltaEnsemble):
    for rec in ensemble:
        for lo, hi, c in _bins(rec.histogram):
            yield (rec.n, lo, hi, c)


INTEGRATED_COLUMNS = ("bin_lo", "bin_hi", "count")


def integrated_rows(hist: Histogram):
    yield from _bins(hist)


PAIRCORR_COLUMNS = ("bin_center", "empirical_density", "theory_density")


def paircorr_rows(result: PairCorrelationResult):
    return zip(result.centers, result.normalized_density, result.theory)
