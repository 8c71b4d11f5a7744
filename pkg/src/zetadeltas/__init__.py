"""Distributions of differences of Riemann zeta zeros.

Per-lag difference distributions, Johnson density fits, pair
correlation against Montgomery's prediction, and recovery of the
smallest zeta zeros from the moment profiles of the differences.
"""

__version__ = "0.1.0"

from .errors import ZetaDeltasError  # noqa: E402
from .zeros import (  # noqa: E402
    ZeroTable, ZeroWindow, mean_density, parse_zero_table, read_zero_table,
    validate, window,
)
from .moments import MomentReport, MomentSummary, accumulate, merge, report, summarize  # noqa: E402
from .histogram import BinningSpec, Histogram  # noqa: E402
from .deltas import (  # noqa: E402
    DeltaEnsemble, build_ensemble, delta_stream, scaled_delta_stream, superpose,
)
from .johnson import JohnsonFamily, JohnsonParams  # noqa: E402
from .paircorr import estimate as pair_correlation, r2_theory  # noqa: E402
from .inference import (  # noqa: E402
    detect_candidates, match, profiles, skew_sign_structure, variance_stretch,
)
