"""Rigorous class-number bounds for curves over finite fields.

Given partial knowledge of a curve — the field size, the genus, and place
or point counts for some degrees — this package computes certified lower
and upper bounds on the class number (the number of degree-zero divisor
classes).  All bound values are exact rationals or directed-rounded
enclosures, never bare floating point.

Main entry points:

- :func:`h_min` / :func:`h_max` / :func:`optimize_N`: two-sided bounds from
  a truncated logarithmic point-count formula, optimized over the
  truncation order.
- :func:`h_min_mertens`: a places-only variant of the lower bound.
- :func:`brt_optimize`: a combinatorial lower bound optimized over divisor
  selections.
- :func:`ahl_bounds`: closed-form combinatorial lower bounds.
- :func:`h_lmd`, :func:`weil_interval`: genus-only bounds.
- :class:`ZetaData` / :func:`numerator_from_counts`: the exact oracle for
  fully specified curves.
- :func:`reproduce`: recompute the bundled reference corpus.
"""

from .classical_bounds import (
    AHLReport,
    AHLVariant,
    BRTSelection,
    ahl_bounds,
    brt_bracket,
    brt_integral,
    brt_optimize,
    brt_value,
    h_lmd,
    weil_interval,
)
from .curve_data import (
    CurveProfile,
    PointEstimate,
    PointEstimates,
    estimate_points,
    places_from_points,
    points_from_places,
    profile_from_dict,
    serre_interval,
    validate_profile,
)
from .errors import (
    ConditionViolated,
    InconsistentCounts,
    JacoboundError,
    MissingDivisor,
    NonpositivePrefactorDenominator,
    PrecisionError,
    ProfileError,
    WeilViolation,
)
from .explicit_bounds import (
    BoundReport,
    LogBoundWindow,
    MertensBreakdown,
    brauer_siegel_limit,
    eps3_abs_bound,
    epsilon_constants,
    h_max,
    h_min,
    h_min_mertens,
    harmonic_term,
    log_h_window,
    mertens_breakdown,
    mertens_residual,
    optimize_N,
    sweep,
)
from .fixtures import FIXTURES, FixtureRow, ReproduceResult, reproduce
from .rounding import DEFAULT_PRECISION, PRECISION_CAP, Enclosure
from .zeta_oracle import (
    ZetaData,
    count_elliptic,
    numerator_from_counts,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AHLReport",
    "AHLVariant",
    "BRTSelection",
    "BoundReport",
    "ConditionViolated",
    "CurveProfile",
    "DEFAULT_PRECISION",
    "Enclosure",
    "FIXTURES",
    "FixtureRow",
    "InconsistentCounts",
    "JacoboundError",
    "LogBoundWindow",
    "MertensBreakdown",
    "MissingDivisor",
    "NonpositivePrefactorDenominator",
    "PRECISION_CAP",
    "PointEstimate",
    "PointEstimates",
    "PrecisionError",
    "ProfileError",
    "ReproduceResult",
    "WeilViolation",
    "ZetaData",
    "ahl_bounds",
    "brauer_siegel_limit",
    "brt_bracket",
    "brt_integral",
    "brt_optimize",
    "brt_value",
    "count_elliptic",
    "eps3_abs_bound",
    "epsilon_constants",
    "estimate_points",
    "h_lmd",
    "h_max",
    "h_min",
    "h_min_mertens",
    "harmonic_term",
    "log_h_window",
    "mertens_breakdown",
    "mertens_residual",
    "numerator_from_counts",
    "optimize_N",
    "places_from_points",
    "points_from_places",
    "profile_from_dict",
    "reproduce",
    "serre_interval",
    "sweep",
    "synthesize",
    "validate_profile",
    "weil_interval",
    "__version__",
]
