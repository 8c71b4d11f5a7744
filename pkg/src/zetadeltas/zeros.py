"""Zero tables: parsing, validation, windows and the mean zero density.

Ordinates are stored split into an exact integer ``base`` and float64
``offsets`` so that differences stay accurate at any height. A literal
such as ``144176897509546973538.49806962`` has more significant digits
than a double can carry; subtracting the base is done on the decimal
text before any conversion to binary floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from decimal import ROUND_FLOOR, Decimal, localcontext
from typing import Iterable, Optional

import numpy as np

from .errors import (
    BoundsError,
    DomainError,
    EmptyInputError,
    OrderError,
    ParseError,
    SpanError,
)

__all__ = [
    "ZeroTable",
    "ZeroWindow",
    "ValidationReport",
    "parse_zero_table",
    "read_zero_table",
    "validate",
    "window",
    "mean_density",
    "MAX_SPAN",
]

# float64 offsets below 2**23 keep a half-ulp under 1e-9
MAX_SPAN = 2 ** 23
NANO = 10 ** 9
TWO_PI = 2.0 * math.pi

_LITERAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)$")


class ZeroTable:
    """Immutable, strictly increasing table of zero ordinates.

    ``zero_k = base + offsets[k]`` with ``base`` an exact integer and
    ``0 <= offsets[0] < 1``. A parallel integer array holds each offset
    truncated to nanounits, which makes 9-decimal re-serialization exact.

    Parameters
    ----------
    base : int
    offsets : array_like of float
    start_ordinal : int, optional
        1-based ordinal of the first zero, when known.
    source : str
    nano : array_like of int, optional
        Offsets truncated to units of 1e-9. Derived from ``offsets`` if
        omitted.
    lines : array_like of int, optional
        Source line number of each entry, used in diagnostics.
    check : bool
        Enforce ordering. Tables built with ``check=False`` exist so that
        :func:`validate` can report violations instead of raising.
    """

    __slots__ = ("base", "offsets", "start_ordinal", "source", "nano", "lines")

    def __init__(self, base, offsets, start_ordinal=None, source="", nano=None,
                 lines=None, check=True):
        offsets = np.array(offsets, dtype=np.float64)
        if offsets.ndim != 1:
            raise ValueError("offsets must be one-dimensional")
        if len(offsets) == 0:
            raise EmptyInputError("zero table is empty")
        if not np.all(np.isfinite(offsets)):
            raise ParseError("non-finite offset")
        if offsets[0] < 0 or offsets[0] >= 1:
            raise ValueError("base must be chosen so that offsets[0] lies in [0, 1)")
        if offsets[-1] - offsets[0] > MAX_SPAN:
            raise SpanError(
                f"table spans {offsets[-1] - offsets[0]:.6g} ordinate units; "
                f"limit is {MAX_SPAN} for 1e-9 offset precision")
        if check:
            bad = np.nonzero(np.diff(offsets) <= 0)[0]
            if len(bad):
                raise OrderError(f"non-increasing zero at index {bad[0] + 1}",
                                 index=int(bad[0] + 1))
        if nano is None:
            nano = np.floor(offsets * NANO + 0.5).astype(np.int64)
        nano = np.array(nano, dtype=np.int64)
        offsets.setflags(write=False)
        nano.setflags(write=False)
        if lines is not None:
            lines = np.array(lines, dtype=np.int64)
            lines.setflags(write=False)
        if start_ordinal is not None and start_ordinal < 1:
            raise ValueError("start_ordinal is 1-based")
        object.__setattr__(self, "base", int(base))
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "start_ordinal", start_ordinal)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "nano", nano)
        object.__setattr__(self, "lines", lines)

    def __setattr__(self, name, value):
        raise AttributeError("ZeroTable is immutable")

    @classmethod
    def from_ordinates(cls, ordinates, start_ordinal=None, source="synthetic"):
        """Build a table from float ordinates (only as precise as the floats)."""
        ordinates = np.asarray(ordinates, dtype=np.float64)
        if len(ordinates) == 0:
            raise EmptyInputError("zero table is empty")
        base = math.floor(ordinates[0])
        return cls(base, ordinates - base, start_ordinal=start_ordinal, source=source)

    def __len__(self):
        return len(self.offsets)

    def __repr__(self):
        return (f"ZeroTable(n={len(self)}, base={self.base}, "
                f"start_ordinal={self.start_ordinal}, source={self.source!r})")

    @property
    def ordinates(self):
        """Full-magnitude float ordinates. Lossy once base exceeds 2**53 / 1e9."""
        return self.base + self.offsets

    def literal(self, k, places=9):
        """Decimal text of zero ``k`` truncated to ``places`` (at most 9) decimals."""
        if not 0 <= places <= 9:
            raise ValueError("places must be in 0..9")
        units, frac = divmod(int(self.nano[k]), NANO)
        whole = self.base + units
        if places == 0:
            return str(whole)
        digits = f"{frac:09d}"[:places]
        if whole < 0 and frac:
            # floor representation: -1 + 0.25 is written -0.75
            value = Decimal(whole) + Decimal(frac) / NANO
            q = Decimal(1).scaleb(-places)
            return str(value.quantize(q, rounding="ROUND_DOWN"))
        return f"{whole}.{digits}"


@dataclass(frozen=True)
class ZeroWindow:
    """A contiguous run of ``count`` zeros starting at ``start_index`` (0-based)."""

    table: ZeroTable
    start_index: int
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise BoundsError("a window needs at least 2 zeros")
        if self.start_index < 0 or self.start_index + self.count > len(self.table):
            raise BoundsError(
                f"window [{self.start_index}, {self.start_index + self.count}) "
                f"outside table of length {len(self.table)}")

    @property
    def offsets(self):
        return self.table.offsets[self.start_index:self.start_index + self.count]

    @property
    def ordinates(self):
        return self.table.base + self.offsets

    @property
    def base(self):
        return self.table.base

    @property
    def start_ordinal(self):
        if self.table.start_ordinal is None:
            return None
        return self.table.start_ordinal + self.start_index

    def __len__(self):
        return self.count

    def describe(self):
        return {"start_index": self.start_index, "count": self.count,
                "start_ordinal": self.start_ordinal, "source": self.table.source}


@dataclass(frozen=True)
class ValidationReport:
    count: int
    min_gap: Optional[float]
    max_gap: Optional[float]
    mean_gap: Optional[float]
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def format(self):
        rows = [f"count     {self.count}"]
        if self.count >= 2:
            rows += [f"min_gap   {self.min_gap:.9f}",
                     f"max_gap   {self.max_gap:.9f}",
                     f"mean_gap  {self.mean_gap:.9f}"]
        for v in self.violations:
            rows.append(f"violation {v}")
        rows.append("status    " + ("ok" if self.ok else "INVALID"))
        return "\n".join(rows)


def _iter_literals(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        if not _LITERAL.match(text):
            raise ParseError(f"not a decimal literal: {text[:40]!r}", line=lineno)
        yield lineno, text


def parse_zero_table(stream, format="auto", strict=True, start_ordinal=None,
                     source=""):
    """Parse one decimal literal per line into a :class:`ZeroTable`.

    Blank lines and ``#`` comments are skipped. With ``strict=False``
    ordering violations are kept (for :func:`validate` to report) rather
    than raised.
    """
    if format not in ("plain", "auto"):
        raise ValueError(f"unsupported format {format!r}")
    if isinstance(stream, str):
        stream = stream.splitlines()
    base = None
    offsets, nano, lines = [], [], []
    prev = None
    with localcontext() as ctx:
        ctx.prec = 200
        for lineno, text in _iter_literals(stream):
            value = Decimal(text)
            if base is None:
                base = int(value.to_integral_value(rounding=ROUND_FLOOR))
            if strict and prev is not None and value <= prev:
                raise OrderError(
                    f"line {lineno}: zero {text} does not exceed its predecessor "
                    f"(index {len(offsets)})", index=len(offsets), line=lineno)
            prev = value
            off = value - base
            offsets.append(float(off))
            nano.append(int((off * NANO).to_integral_value(rounding=ROUND_FLOOR)))
            lines.append(lineno)
    if base is None:
        raise EmptyInputError("no zeros in input")
    return ZeroTable(base, offsets, start_ordinal=start_ordinal, source=source,
                     nano=nano, lines=lines, check=strict)


def read_zero_table(path, strict=True, start_ordinal=None):
    """Read a plain zero file; ``.gz`` files are decompressed transparently."""
    import gzip

    path = str(path)
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as fh:
        return parse_zero_table(fh, strict=strict, start_ordinal=start_ordinal,
                                source=path)


def validate(table: ZeroTable) -> ValidationReport:
    """Summarize gaps and list every adjacent non-increasing pair."""
    n = len(table)
    if n < 2:
        return ValidationReport(count=n, min_gap=None, max_gap=None, mean_gap=None)
    gaps = np.diff(table.offsets)
    violations = []
    for i in np.nonzero(gaps <= 0)[0]:
        k = int(i) + 1
        where = f" (line {int(table.lines[k])})" if table.lines is not None else ""
        violations.append(
            f"index {k}{where}: {table.literal(k)} <= {table.literal(k - 1)}")
    return ValidationReport(count=n, min_gap=float(gaps.min()),
                            max_gap=float(gaps.max()),
                            mean_gap=float((table.offsets[-1] - table.offsets[0]) / (n - 1)),
                            violations=violations)


def window(table: ZeroTable, start_index: int = 0, count: Optional[int] = None) -> ZeroWindow:
    if count is None:
        count = len(table) - start_index
    return ZeroWindow(table, int(start_index), int(count))


def mean_density(ordinate):
    """Expected number of zeros per unit ordinate near ``ordinate``.

    Returns ``ln(t / 2pi) / 2pi``; scalar in, scalar out.
    """
    t = np.asarray(ordinate, dtype=np.float64)
    if np.any(~(t > TWO_PI)):
        raise DomainError("mean density needs ordinate > 2*pi")
    out = np.log(t / TWO_PI) / TWO_PI
    return float(out) if out.ndim == 0 else out
