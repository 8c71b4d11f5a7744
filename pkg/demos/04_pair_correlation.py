# %% [markdown]
# # Pair correlation
#
# Unfolding each difference by the local density `log(t / 2 pi) / (2 pi)`
# gives unit mean spacing. The histogram of unfolded differences, per zero
# and per unit length, is then compared with `1 - (sin(pi x) / (pi x))**2`.

# %%
from pathlib import Path

import numpy as np

from zetadeltas import pair_correlation, read_zero_table, window

DATA = Path(__file__).resolve().parent.parent / "data"

for name, first in [("zeros_first_100000.txt.gz", 1), ("zeros_1747147_100000.txt.gz", 1747147)]:
    table = read_zero_table(DATA / name, start_ordinal=first)
    res = pair_correlation(window(table, 0, len(table)), cutoff=3.0, bin_count=30, n_max=30)
    print(f"{name}: rms deviation {res.rms_deviation:.4f}")

# %% [markdown]
# A text plot of the second table: `*` marks the empirical density and
# `|` the prediction.

# %%
for c, e, t in zip(res.centers, res.normalized_density, res.theory):
    row = [" "] * 61
    row[min(int(round(t * 40)), 60)] = "|"
    row[min(int(round(e * 40)), 60)] = "*"
    print(f"{c:5.2f} {''.join(row)}")
