"""Class number bounds from truncated logarithmic point-count sums.

The identity

    log h = g*log q + sum_{f<=N} N_f/(f*q^f) - sum_{n<=N} (1+q^-n)/n - eps3(N)

holds for every truncation order N >= 1, with |eps3(N)| bounded by an
explicit term that decays like q^(-N/2). Replacing the unknown point
counts N_f by rigorous lower/upper estimates and eps3 by its bound turns
the identity into a two-sided class number bound. This module evaluates
those bounds with exact rational cores and directed rounding, sweeps over
N, and also provides the weaker place-count (Mertens-style) lower bound,
the breakdown of the underlying sum identities for oracle testing, and
the asymptotic per-genus limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .curve_data import CurveProfile, PointEstimates, estimate_points
from .errors import IncompleteEstimates, InvalidN, PrecisionError
from .rounding import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    Enclosure,
    ceil_lo,
    floor_hi,
    fraction_to_sig_decimal,
    log_enclosure,
    render_significant,
    sqrt_enclosure,
)
from .zeta_oracle import ZetaData

__all__ = [
    "AsymptoticProfile",
    "BoundReport",
    "LogBoundWindow",
    "MertensBreakdown",
    "brauer_siegel_limit",
    "eps3_abs_bound",
    "epsilon_constants",
    "h_max",
    "h_min",
    "h_min_mertens",
    "harmonic_term",
    "log_h_window",
    "mertens_breakdown",
    "mertens_residual",
    "optimize_N",
    "sweep",
    "weighted_point_sum",
]

AsymptoticProfile = Mapping[int, Union[int, Fraction, float]]


def _check_n(n_trunc: int) -> None:
    if not isinstance(n_trunc, int) or isinstance(n_trunc, bool) or n_trunc < 1:
        raise InvalidN(f"truncation order must be a positive integer, got {n_trunc!r}")


def harmonic_term(q: int, n_trunc: int) -> Fraction:
    """Exact value of sum_{n=1}^{N} (1 + q**-n)/n."""
    _check_n(n_trunc)
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q!r}")
    return sum(
        (Fraction(q**n + 1, n * q**n) for n in range(1, n_trunc + 1)), Fraction(0)
    )


def weighted_point_sum(
    est: PointEstimates, q: int, n_trunc: int, direction: str = "lower"
) -> Fraction:
    """Exact value of sum_{f=1}^{N} N_f/(f*q**f) at one end of the estimates."""
    _check_n(n_trunc)
    if direction not in ("lower", "upper"):
        raise ValueError(f"direction must be 'lower' or 'upper', got {direction!r}")
    if est.n_max < n_trunc:
        raise IncompleteEstimates(
            f"estimates cover degrees 1..{est.n_max} but N = {n_trunc} is needed"
        )
    total = Fraction(0)
    for f in range(1, n_trunc + 1):
        e = est[f]
        count = e.lower if direction == "lower" else e.upper
        total += Fraction(count, f * q**f)
    return total


def eps3_abs_bound(
    q: int, g: int, n_trunc: int, precision: int = DEFAULT_PRECISION
) -> Enclosure:
    """Upper enclosure of 2g/((sqrt(q)-1)(N+1)q**(N/2)); exactly 0 for g = 0."""
    _check_n(n_trunc)
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g!r}")
    if g == 0:
        return Enclosure.exact(0, precision)
    sqrt_q = sqrt_enclosure(q, precision)
    denom = (sqrt_q - 1) * (n_trunc + 1) * sqrt_enclosure(q**n_trunc, precision)
    return Enclosure.exact(2 * g, precision) / denom


@dataclass
class LogBoundWindow:
    """Two-sided log-space class number bound at one truncation order.

    `rational_lower_core` / `rational_upper_core` hold the exact rational
    part sum_{f<=N} N_f^(dir)/(f q^f) - sum_{n<=N} (1+q^-n)/n for the lower
    and upper point estimates. `log_h_lower` / `log_h_upper` add g*log q
    and -/+ the eps3 bound with directed rounding; their exp is carried in
    `h_lower` / `h_upper`. The usable bounds are h_lower.lo <= h <=
    h_upper.hi.
    """

    n_trunc: int
    policy: str
    rational_lower_core: Fraction
    rational_upper_core: Fraction
    eps3: Enclosure
    log_h_lower: Enclosure
    log_h_upper: Enclosure
    h_lower: Enclosure
    h_upper: Enclosure


def _window(
    q: int,
    g: int,
    n_trunc: int,
    policy: str,
    lower_core: Fraction,
    upper_core: Fraction,
    log_q: Enclosure,
    precision: int,
) -> LogBoundWindow:
    eps3 = eps3_abs_bound(q, g, n_trunc, precision)
    g_log_q = log_q * g
    log_lower = g_log_q + Enclosure.exact(lower_core, precision) - eps3
    log_upper = g_log_q + Enclosure.exact(upper_core, precision) + eps3
    return LogBoundWindow(
        n_trunc=n_trunc,
        policy=policy,
        rational_lower_core=lower_core,
        rational_upper_core=upper_core,
        eps3=eps3,
        log_h_lower=log_lower,
        log_h_upper=log_upper,
        h_lower=log_lower.exp(),
        h_upper=log_upper.exp(),
    )


def log_h_window(
    profile: CurveProfile,
    n_trunc: int,
    policy: str = "best",
    precision: int = DEFAULT_PRECISION,
    estimates: Optional[PointEstimates] = None,
) -> LogBoundWindow:
    """Two-sided bound on log h at truncation order N.

    Point counts of degrees 1..N come from `estimates` (computed from the
    profile under `policy` when not supplied).
    """
    _check_n(n_trunc)
    if estimates is None:
        estimates = estimate_points(profile, n_trunc, policy)
    lower = weighted_point_sum(estimates, profile.q, n_trunc, "lower")
    upper = weighted_point_sum(estimates, profile.q, n_trunc, "upper")
    harm = harmonic_term(profile.q, n_trunc)
    log_q = log_enclosure(profile.q, precision)
    return _window(
        profile.q,
        profile.g,
        n_trunc,
        estimates.policy,
        lower - harm,
        upper - harm,
        log_q,
        precision,
    )


def h_min(
    profile: CurveProfile,
    n_trunc: int,
    policy: str = "best",
    precision: int = DEFAULT_PRECISION,
) -> Enclosure:
    """Enclosure of the lower class number bound at truncation order N."""
    return log_h_window(profile, n_trunc, policy, precision).h_lower


def h_max(
    profile: CurveProfile,
    n_trunc: int,
    policy: str = "best",
    precision: int = DEFAULT_PRECISION,
) -> Enclosure:
    """Enclosure of the upper class number bound at truncation order N."""
    return log_h_window(profile, n_trunc, policy, precision).h_upper


def sweep(
    profile: CurveProfile,
    n_max: int,
    policy: str = "best",
    precision: int = DEFAULT_PRECISION,
) -> List[LogBoundWindow]:
    """Windows for every truncation order N = 1..n_max.

    Equivalent to calling log_h_window for each N, but the rational cores
    are accumulated incrementally, so the full sweep costs the same as the
    last window. Evaluation order does not affect any value: each window
    is a pure function of the profile, N, policy, and precision.
    """
    _check_n(n_max)
    estimates = estimate_points(profile, n_max, policy)
    q = profile.q
    log_q = log_enclosure(q, precision)
    lower_core = Fraction(0)
    upper_core = Fraction(0)
    out: List[LogBoundWindow] = []
    for n in range(1, n_max + 1):
        e = estimates[n]
        qn = q**n
        lower_core += Fraction(e.lower - qn - 1, n * qn)
        upper_core += Fraction(e.upper - qn - 1, n * qn)
        out.append(
            _window(q, profile.g, n, estimates.policy, lower_core, upper_core, log_q, precision)
        )
    return out


@dataclass
class BoundReport:
    """One named bound value with the context needed to interpret it.

    `value` is a decimal string at `sig_digits` significant digits;
    `integer_refinement` is the sharpest integer implied by the bound
    (ceiling of a lower bound, floor of an upper bound). `enclosure` keeps
    the underlying directed-rounded value for exact comparisons.
    """

    bound_name: str
    kind: str  # "lower" or "upper"
    value: str
    sig_digits: int
    integer_refinement: Optional[int]
    n_trunc: Optional[int] = None
    policy: Optional[str] = None
    assumptions: List[str] = field(default_factory=list)
    enclosure: Optional[Enclosure] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "bound_name": self.bound_name,
            "kind": self.kind,
            "value": self.value,
            "sig_digits": self.sig_digits,
            "integer_refinement": self.integer_refinement,
            "N": self.n_trunc,
            "policy": self.policy,
            "assumptions": list(self.assumptions),
        }


def _render_bound(enc: Enclosure, sig_digits: int, recompute, precision: int) -> Tuple[str, Enclosure]:
    """Render an enclosure, recomputing at doubled precision if too wide."""
    p = precision
    while True:
        text = render_significant(enc, sig_digits)
        if text is not None:
            return text, enc
        p *= 2
        if p > PRECISION_CAP:
            raise PrecisionError(
                f"cannot fix {sig_digits} significant digits below {PRECISION_CAP} bits"
            )
        enc = recompute(p)


def report_from_window(
    window_side: Enclosure,
    kind: str,
    bound_name: str,
    n_trunc: Optional[int],
    policy: Optional[str],
    sig_digits: int,
    precision: int,
    recompute,
    assumptions: Optional[List[str]] = None,
) -> BoundReport:
    """Wrap one side of a bound window into a rendered BoundReport."""
    value, enc = _render_bound(window_side, sig_digits, recompute, precision)
    refinement = ceil_lo(enc) if kind == "lower" else floor_hi(enc)
    return BoundReport(
        bound_name=bound_name,
        kind=kind,
        value=value,
        sig_digits=sig_digits,
        integer_refinement=refinement,
        n_trunc=n_trunc,
        policy=policy,
        assumptions=list(assumptions or []),
        enclosure=enc,
    )


def optimize_N(
    profile: CurveProfile,
    n_max: int,
    policy: str = "best",
    precision: int = DEFAULT_PRECISION,
    sig_digits: int = 6,
    display_ties: bool = False,
) -> Tuple[BoundReport, BoundReport]:
    """Best lower and best upper bound over truncation orders 1..n_max.

    Sweeps N = 1..n_max and selects the argmax of the rigorous lower bound
    and the argmin of the rigorous upper bound, comparing exact enclosure
    endpoints; ties break toward the smaller N. With `display_ties` set,
    two orders whose bounds agree to `sig_digits` significant digits count
    as tied, so the reported N is the smallest order already achieving the
    displayed optimum (larger orders improve the bound only below display
    resolution).
    """
    windows = sweep(profile, n_max, policy, precision)

    def key_lower(w: LogBoundWindow):
        v = w.h_lower.lo_fraction()
        return fraction_to_sig_decimal(v, sig_digits) if display_ties else v

    def key_upper(w: LogBoundWindow):
        v = w.h_upper.hi_fraction()
        return fraction_to_sig_decimal(v, sig_digits) if display_ties else v

    # max/min return the first optimum, so ties already break toward smaller N.
    best_lo = max(windows, key=key_lower)
    best_hi = min(windows, key=key_upper)

    lower_report = report_from_window(
        best_lo.h_lower,
        "lower",
        "h_min_explicit",
        best_lo.n_trunc,
        best_lo.policy,
        sig_digits,
        precision,
        lambda p, n=best_lo.n_trunc: log_h_window(profile, n, policy, p).h_lower,
    )
    upper_report = report_from_window(
        best_hi.h_upper,
        "upper",
        "h_max_explicit",
        best_hi.n_trunc,
        best_hi.policy,
        sig_digits,
        precision,
        lambda p, n=best_hi.n_trunc: log_h_window(profile, n, policy, p).h_upper,
    )
    return lower_report, upper_report


def epsilon_constants(
    q: int, precision: int = DEFAULT_PRECISION
) -> Tuple[Fraction, Enclosure]:
    """Constants (c1, c2) of the place-log-sum error bound.

    c1 = 2q(q+1)/(q-1)^2 is exact; c2 = (2q/(q-1)) * (sqrt(q)/(sqrt(q)-1)
    + q^{3/2}/(q^{3/2}-1)) is returned as an enclosure.
    """
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q!r}")
    c1 = Fraction(2 * q * (q + 1), (q - 1) ** 2)
    sqrt_q = sqrt_enclosure(q, precision)
    q32 = sqrt_enclosure(q**3, precision)
    c2 = Enclosure.exact(Fraction(2 * q, q - 1), precision) * (
        sqrt_q / (sqrt_q - 1) + q32 / (q32 - 1)
    )
    return c1, c2


def _place_log_sum_lower(
    places: Mapping[int, int], q: int, n_trunc: int, precision: int
) -> Enclosure:
    """Enclosure of sum over known degrees f <= N of Phi_f*log(q^f/(q^f-1))."""
    total = Enclosure.exact(0, precision)
    for f in sorted(places):
        if f > n_trunc or places[f] == 0:
            continue
        term = log_enclosure(Fraction(q**f, q**f - 1), precision)
        total = total + term * places[f]
    return total


def h_min_mertens(
    profile: CurveProfile,
    n_trunc: int,
    policy: str = "best",
    precision: int = DEFAULT_PRECISION,
    sig_digits: int = 6,
) -> BoundReport:
    """Place-count lower bound: a weaker but places-only variant of h_min.

    Evaluates q^g * exp(sum_{f<=N} Phi_f*log(q^f/(q^f-1)) - harmonic_term
    + eps0_lower - eps3_bound) with eps0_lower = -c1/(N q^{N/2})
    - c2*g/(N q^{3N/4}). Unknown place counts contribute zero under every
    fill policy (no rigorous per-degree lower bound on a single place
    count exists in general), which keeps the bound valid; the policy is
    recorded for reporting symmetry with the point-count bounds.
    """
    _check_n(n_trunc)
    q, g = profile.q, profile.g

    def compute(p: int) -> Enclosure:
        c1, c2 = epsilon_constants(q, p)
        q_half = sqrt_enclosure(q**n_trunc, p)
        q_three_quarter = sqrt_enclosure(q ** (3 * n_trunc), p).sqrt()
        eps0_lower = -(
            Enclosure.exact(c1, p) / (q_half * n_trunc)
            + Enclosure.exact(g, p) * c2 / (q_three_quarter * n_trunc)
        )
        log_val = (
            log_enclosure(q, p) * g
            + _place_log_sum_lower(profile.places, q, n_trunc, p)
            - Enclosure.exact(harmonic_term(q, n_trunc), p)
            + eps0_lower
            - eps3_abs_bound(q, g, n_trunc, p)
        )
        return log_val.exp()

    enc = compute(precision)
    return report_from_window(
        enc,
        "lower",
        "h_min_mertens",
        n_trunc,
        policy,
        sig_digits,
        precision,
        compute,
        assumptions=["unknown place counts contribute zero"],
    )


@dataclass
class MertensBreakdown:
    """Exact decomposition of the truncated sum identities for one curve.

    S0 = sum N_n/(n q^n), S1 = sum 1/n, S2 = sum q^-n/n, and S3 =
    -sum s_n/(n q^n) satisfy S0 = S1 + S2 + S3 identically. The eps terms
    measure the defect of each truncated series against its limit; the
    residual recombines everything and must contain zero.
    """

    n_trunc: int
    S0: Fraction
    S1: Fraction
    S2: Fraction
    S3: Optional[Fraction]
    place_log_sum: Enclosure
    eps0: Optional[Enclosure]
    eps2: Optional[Enclosure]
    eps3: Optional[Enclosure]
    eps0_lower_bound: Enclosure
    eps2_bounds: Tuple[Fraction, Fraction]
    eps3_abs_bound: Enclosure
    c1: Fraction
    c2: Enclosure
    residual: Enclosure


def mertens_breakdown(
    zeta: ZetaData, n_trunc: int, precision: int = DEFAULT_PRECISION
) -> MertensBreakdown:
    """All pieces of the place-log-sum identity, from exact zeta data."""
    _check_n(n_trunc)
    q, g = zeta.q, zeta.g
    S0 = Fraction(0)
    S1 = Fraction(0)
    S2 = Fraction(0)
    S3 = Fraction(0)
    for n in range(1, n_trunc + 1):
        qn = q**n
        S0 += Fraction(zeta.point_count(n), n * qn)
        S1 += Fraction(1, n)
        S2 += Fraction(1, n * qn)
        S3 -= Fraction(zeta.power_sum(n), n * qn)

    places = zeta.place_counts(n_trunc)
    place_log_sum = _place_log_sum_lower(places, q, n_trunc, precision)
    log_q_ratio = log_enclosure(Fraction(q, q - 1), precision)
    log_kappa_log_q = log_enclosure(zeta.kappa_log_q(), precision)

    eps0 = Enclosure.exact(S0, precision) - place_log_sum
    eps2 = Enclosure.exact(S2, precision) - log_q_ratio
    eps3 = Enclosure.exact(S3, precision) + log_q_ratio - log_kappa_log_q

    c1, c2 = epsilon_constants(q, precision)
    q_half = sqrt_enclosure(q**n_trunc, precision)
    q_three_quarter = sqrt_enclosure(q ** (3 * n_trunc), precision).sqrt()
    eps0_lower = -(
        Enclosure.exact(c1, precision) / (q_half * n_trunc)
        + Enclosure.exact(g, precision) * c2 / (q_three_quarter * n_trunc)
    )
    eps2_bounds = (Fraction(-1, (q - 1) * (n_trunc + 1) * q**n_trunc), Fraction(0))

    residual = place_log_sum - (
        log_kappa_log_q - eps0 + eps2 + eps3 + Enclosure.exact(S1, precision)
    )
    return MertensBreakdown(
        n_trunc=n_trunc,
        S0=S0,
        S1=S1,
        S2=S2,
        S3=S3,
        place_log_sum=place_log_sum,
        eps0=eps0,
        eps2=eps2,
        eps3=eps3,
        eps0_lower_bound=eps0_lower,
        eps2_bounds=eps2_bounds,
        eps3_abs_bound=eps3_abs_bound(q, g, n_trunc, precision),
        c1=c1,
        c2=c2,
        residual=residual,
    )


def mertens_residual(
    zeta: ZetaData, n_trunc: int, precision: int = DEFAULT_PRECISION
) -> Enclosure:
    """Enclosure of the place-log-sum identity residual; must contain 0."""
    return mertens_breakdown(zeta, n_trunc, precision).residual


def brauer_siegel_limit(
    q: int, phis: AsymptoticProfile, precision: int = DEFAULT_PRECISION
) -> Enclosure:
    """Asymptotic limit of log h / g for a family with place densities phis.

    Returns an enclosure of log q + sum_r phis[r]*log(q^r/(q^r-1)). The
    densities phis[r] (places of degree r per unit of genus) may be given
    as ints, Fractions, or floats; finitely many must be nonzero.
    """
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q!r}")
    total = log_enclosure(q, precision)
    for r in sorted(phis):
        density = phis[r]
        if density == 0:
            continue
        if r < 1:
            raise ValueError(f"place degree must be >= 1, got {r!r}")
        term = log_enclosure(Fraction(q**r, q**r - 1), precision)
        total = total + term * Enclosure.exact(density, precision)
    return total
