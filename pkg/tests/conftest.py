import math
from pathlib import Path

import numpy as np
import pytest

from zetadeltas.zeros import parse_zero_table, read_zero_table, window

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
DATA = DATA_DIR / "zeros_first_100000.txt.gz"
# 10**5 consecutive zeros from ordinal 1747147 (height 10**6): mean
# spacing changes by only 0.4% across this table
HIGH_DATA = DATA_DIR / "zeros_1747147_100000.txt.gz"
HIGH_START_ORDINAL = 1_747_147

# first zeros to 9 decimals (Odlyzko / LMFDB tables)
FIRST_ZEROS = [14.134725142, 21.022039639, 25.010857580, 30.424876126,
               32.935061588, 37.586178159, 40.918719012, 43.327073281,
               48.005150881, 49.773832478, 52.970321478, 56.446247697]

# the last 10**4 of the first 10**5 zeros: mean spacing varies < 1% across it
HOMOGENEOUS_START = 90_000
HOMOGENEOUS_COUNT = 10_000


@pytest.fixture(scope="session")
def zero_table():
    return read_zero_table(DATA, start_ordinal=1)


@pytest.fixture(scope="session")
def full_window(zero_table):
    return window(zero_table, 0, len(zero_table))


@pytest.fixture(scope="session")
def homogeneous_window(zero_table):
    return window(zero_table, HOMOGENEOUS_START, HOMOGENEOUS_COUNT)


@pytest.fixture(scope="session")
def high_table():
    return read_zero_table(HIGH_DATA, start_ordinal=HIGH_START_ORDINAL)


@pytest.fixture(scope="session")
def high_window(high_table):
    return window(high_table, 0, len(high_table))


@pytest.fixture
def three_zero_table():
    return parse_zero_table("14.134725141\n21.022039638\n25.010857580\n")


@pytest.fixture(scope="session")
def reference_zeros(zero_table):
    return np.asarray(zero_table.ordinates[:200])


def two_pass(x):
    """Compensated two-pass central sums (oracle).

    Runs in extended precision where the platform has it and falls back
    to exactly rounded ``math.fsum`` sums otherwise.
    """
    if np.finfo(np.longdouble).eps < 1e-18:
        a = np.asarray(x, dtype=np.float64).astype(np.longdouble)
        n = len(a)
        mean = a.sum() / n
        mean += (a - mean).sum() / n
        d = a - mean
        d2 = d * d
        return (n, float(mean), float(d2.sum()), float((d2 * d).sum()),
                float((d2 * d2).sum()))
    x = [float(v) for v in x]
    n = len(x)
    mean = math.fsum(x) / n
    mean += math.fsum(v - mean for v in x) / n
    d = [v - mean for v in x]
    return (n, mean, math.fsum(v * v for v in d), math.fsum(v ** 3 for v in d),
            math.fsum(v ** 4 for v in d))


@pytest.fixture(scope="session")
def full_ensemble(full_window):
    from zetadeltas.deltas import build_ensemble
    return build_ensemble(full_window, 159, workers=8)


@pytest.fixture(scope="session")
def high_ensemble(high_window):
    from zetadeltas.deltas import build_ensemble
    return build_ensemble(high_window, 159, workers=8)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
