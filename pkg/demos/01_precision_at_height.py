# %% [markdown]
# # Differences of zeros at great height
#
# Tables of zeros near the 10**21st zero print ordinates with 21 integer
# digits. A float64 keeps about 16 significant digits, so storing those
# ordinates directly throws away the decimals we care about. `ZeroTable`
# keeps an exact integer base and small float offsets instead.

# %%
from fractions import Fraction

import numpy as np

from zetadeltas import parse_zero_table

literals = [
    "144176897509546973538.49806962",
    "144176897509546973538.71692458",
    "144176897509546973539.12004471",
]

# %% [markdown]
# As plain floats the first two ordinates are the same number.

# %%
print([float(s) for s in literals])
print("float difference:", float(literals[1]) - float(literals[0]))

# %% [markdown]
# Parsed into a table, the base absorbs the integer digits and the offsets
# keep the fractional detail.

# %%
table = parse_zero_table("\n".join(literals))
print("base:", table.base)
print("offsets:", table.offsets)
diffs = np.diff(table.offsets)
exact = [Fraction(b) - Fraction(a) for a, b in zip(literals, literals[1:])]
for d, e in zip(diffs, exact):
    print(f"difference {d:.9f}   exact {float(e):.9f}   error {float(abs(Fraction(float(d)) - e)):.2e}")

# %% [markdown]
# Literals come back exactly, truncated to nine decimals.

# %%
print([table.literal(k) for k in range(len(table))])
