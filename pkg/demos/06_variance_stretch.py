# %% [markdown]
# # Stretch of the variance peaks with height
#
# Higher up the zeros are denser, so a given zeta zero is reached at a
# larger lag. The stretch between two peak-lag lists is the least-squares
# factor `r` minimizing `sum (b_k - r a_k)**2` over peaks paired in order.

# %%
from pathlib import Path

from zetadeltas import build_ensemble, read_zero_table, window
from zetadeltas.inference import detect_candidates, profiles, variance_stretch

peaks_1e9 = [40, 60, 71, 87, 94, 107, 117, 123, 137, 142, 151]
peaks_1e11 = [50, 75, 88, 108, 116, 133, 145, 153]
print("stretch between the two published lists:",
      round(variance_stretch(peaks_1e9, peaks_1e11), 4))

# %% [markdown]
# The same factor between our two windows. Peaks below the first zero are
# dropped so that both lists start at 14.13.

# %%
DATA = Path(__file__).resolve().parent.parent / "data"
low = read_zero_table(DATA / "zeros_first_100000.txt.gz", start_ordinal=1)
high = read_zero_table(DATA / "zeros_1747147_100000.txt.gz", start_ordinal=1747147)


def peak_lags(win, n_max):
    cands = detect_candidates(profiles(build_ensemble(win, n_max, workers=4)), 1)
    return [c.lag for c in cands if c.score >= 2 and c.location > 13.5]


a = peak_lags(window(low, 90_000, 10_000), 80)
b = peak_lags(window(high, 0, len(high)), 100)
print("near zero 9 * 10**4:", a)
print("near zero 1.7 * 10**6:", b)
print("stretch:", round(variance_stretch(a, b), 4))
