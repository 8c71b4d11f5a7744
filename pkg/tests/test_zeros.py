import io
import math
import re
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetadeltas.errors import (
    BoundsError, DomainError, EmptyInputError, OrderError, ParseError, SpanError,
)
from zetadeltas.zeros import (
    MAX_SPAN, ZeroTable, mean_density, parse_zero_table, validate, window,
)


def test_parse_three_zeros(three_zero_table):
    t = three_zero_table
    assert t.base == 14
    expected = [float(Decimal(s)) for s in ("0.134725141", "7.022039638", "11.010857580")]
    assert t.offsets.tolist() == expected


def test_parse_skips_blank_and_comment_lines():
    t = parse_zero_table("# header\n\n14.5\n   \n# mid\n15.25\n")
    assert len(t) == 2
    assert t.lines.tolist() == [3, 6]


def test_parse_duplicate_is_order_error():
    with pytest.raises(OrderError) as exc:
        parse_zero_table("5.0\n5.0\n")
    assert exc.value.index == 1


def test_parse_decreasing_is_order_error():
    with pytest.raises(OrderError) as exc:
        parse_zero_table("5.0\n6.0\n5.5\n")
    assert exc.value.index == 2 and exc.value.line == 3


@pytest.mark.parametrize("bad", ["abc", "1e5", "1.2.3", "0x10", "--1"])
def test_parse_non_numeric_reports_line(bad):
    with pytest.raises(ParseError) as exc:
        parse_zero_table(f"1.0\n# c\n{bad}\n")
    assert exc.value.line == 3


def test_parse_empty_input():
    with pytest.raises(EmptyInputError):
        parse_zero_table("# nothing\n\n")


def test_parse_accepts_stream():
    t = parse_zero_table(io.StringIO("1.5\n2.5\n"))
    assert t.base == 1 and t.offsets.tolist() == [0.5, 1.5]


def test_high_literal_differences_survive():
    a = "144176897509546973538.49806962"
    b = "144176897509546973538.71692458"
    c = "144176897509546973539.12004471"
    t = parse_zero_table("\n".join([a, b, c]))
    assert t.base == 144176897509546973538
    exact = [Fraction(b) - Fraction(a), Fraction(c) - Fraction(b)]
    got = np.diff(t.offsets)
    for g, e in zip(got, exact):
        assert abs(Fraction(float(g)) - e) < Fraction(1, 10 ** 9)
    # a full-magnitude double cannot even tell the literals apart
    assert float(a) == float(b)


def test_literal_round_trip(three_zero_table):
    assert [three_zero_table.literal(k) for k in range(3)] == [
        "14.134725141", "21.022039638", "25.010857580"]
    assert three_zero_table.literal(0, places=3) == "14.134"


def test_span_limit():
    with pytest.raises(SpanError):
        ZeroTable(0, [0.0, MAX_SPAN + 1.0])


def test_table_is_immutable(three_zero_table):
    with pytest.raises(AttributeError):
        three_zero_table.base = 3
    with pytest.raises(ValueError):
        three_zero_table.offsets[0] = 0.5


def test_validate_three_zero_table(three_zero_table):
    rep = validate(three_zero_table)
    assert rep.count == 3 and rep.ok
    assert rep.min_gap == pytest.approx(3.988817942, abs=1e-9)
    assert rep.max_gap == pytest.approx(6.887314497, abs=1e-9)


def test_validate_single_zero():
    rep = validate(parse_zero_table("14.1"))
    assert rep.count == 1 and rep.min_gap is None and rep.ok


def test_validate_unit_lattice():
    rep = validate(ZeroTable(0, [0.0, 1.0, 2.0]))
    assert rep.mean_gap == 1.0


def test_validate_flags_exactly_the_bad_pairs():
    t = parse_zero_table("1.0\n2.0\n1.5\n3.0\n3.0\n4.0\n", strict=False)
    rep = validate(t)
    assert not rep.ok
    assert len(rep.violations) == 2
    assert rep.violations[0].startswith("index 2 (line 3)")
    assert rep.violations[1].startswith("index 4 (line 5)")


@given(st.lists(st.floats(-3.0, 3.0), min_size=2, max_size=40))
def test_validate_monotonicity_property(steps):
    # an arbitrary walk from 0.5, possibly revisiting or going backwards
    offsets = np.concatenate([[0.5], 0.5 + np.cumsum(steps)])
    t = ZeroTable(0, offsets, check=False)
    rep = validate(t)
    bad = {int(i) + 1 for i in np.nonzero(np.diff(offsets) <= 0)[0]}
    flagged = {int(re.match(r"index (\d+)", v).group(1)) for v in rep.violations}
    assert flagged == bad


def test_window_full_and_bounds():
    t = ZeroTable.from_ordinates(np.arange(100) + 20.5)
    w = window(t, 0, 100)
    assert w.count == 100 and len(w.offsets) == 100
    with pytest.raises(BoundsError):
        window(t, 90, 20)
    with pytest.raises(BoundsError):
        window(t, 5, 1)


def test_window_indexing_convention():
    t = ZeroTable.from_ordinates(np.arange(100) + 20.5, start_ordinal=1)
    w = window(t, 10, 50)
    assert w.ordinates[0] == t.ordinates[10]
    assert w.start_ordinal == 11


def test_mean_density_values():
    assert mean_density(2 * math.pi * math.e) == pytest.approx(1 / (2 * math.pi), rel=1e-14)
    # direct evaluation: ln(14.134725 / 2pi) / 2pi
    assert mean_density(14.134725) == pytest.approx(0.129036058886821, abs=1e-12)
    with pytest.raises(DomainError):
        mean_density(6.0)


@settings(max_examples=200)
@given(st.integers(10 ** 20, 10 ** 21 - 1),
       st.lists(st.integers(1, 3 * 10 ** 12), min_size=1, max_size=20),
       st.integers(0, 10 ** 12 - 1))
def test_difference_exactness_at_height(whole, steps, frac0):
    # steps in units of 1e-12 ordinate; literals carry 12 decimals
    units = [whole * 10 ** 12 + frac0]
    for s in steps:
        units.append(units[-1] + s)
    lits = [f"{u // 10 ** 12}.{u % 10 ** 12:012d}" for u in units]
    t = parse_zero_table("\n".join(lits))
    got = np.diff(t.offsets)
    for g, s in zip(got, steps):
        assert abs(Fraction(float(g)) - Fraction(s, 10 ** 12)) <= Fraction(2, 10 ** 9)


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(1, 10 ** 5), st.integers(0, 10 ** 14 - 1)),
                min_size=1, max_size=30),
       st.integers(1, 10 ** 6), st.integers(1, 14))
def test_round_trip_truncates_to_nine_places(steps, start, ndec):
    # strictly increasing literals with ndec decimals
    scale = 10 ** ndec
    units = start * scale
    lits = []
    for whole_step, frac in steps:
        units += whole_step * scale // 1000 + frac % scale + 1
        lits.append(f"{units // scale}.{units % scale:0{ndec}d}")
    t = parse_zero_table("\n".join(lits))
    for k, lit in enumerate(lits):
        whole, frac = lit.split(".")
        assert t.literal(k) == f"{whole}.{(frac + '0' * 9)[:9]}"
