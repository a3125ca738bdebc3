"""Combinatorial class-number bounds computed from partial place counts.

Everything here is exact rational arithmetic: binomial products over chosen
place degrees (`brt_*`), the four binomial bounds driven by the rational
point count (`ahl_bounds`), the genus-only bounds (`weil_interval`,
`h_lmd`). Only `weil_interval` can be irrational (it carries sqrt(q)) and it
returns directed-rounded enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Tuple

from .errors import (
    ConditionViolated,
    NonpositivePrefactorDenominator,
)
from .rounding import DEFAULT_PRECISION, Enclosure, sqrt_enclosure

__all__ = [
    "comb",
    "weil_interval",
    "h_lmd",
    "brt_integral",
    "brt_bracket",
    "BRTSelection",
    "brt_value",
    "brt_optimize",
    "AHLVariant",
    "AHLReport",
    "ahl_bounds",
]


def comb(n: int, k: int) -> int:
    """Binomial coefficient extended to arbitrary integer arguments.

    C(n, 0) = 1 for every n (including negative); C(n, k) = 0 when k < 0,
    when n < 0, or when 0 <= n < k. Matches the generating-function
    conventions used by the bounds below, where out-of-range terms vanish.
    """
    if k == 0:
        return 1
    if k < 0 or n < 0 or n < k:
        return 0
    return math.comb(n, k)


# -- genus-only bounds ---------------------------------------------------


def weil_interval(
    q: int, g: int, precision: int = DEFAULT_PRECISION
) -> Tuple[Enclosure, Enclosure]:
    """Two-sided bound (sqrt(q)-1)^{2g} <= h <= (sqrt(q)+1)^{2g}.

    Endpoints are exact integers when q is a perfect square, otherwise
    directed-rounded enclosures of the irrational values.
    """
    if q < 2 or g < 0:
        raise ValueError("need q >= 2 and g >= 0")
    s = math.isqrt(q)
    if s * s == q:
        lower = Enclosure.exact((s - 1) ** (2 * g), precision)
        upper = Enclosure.exact((s + 1) ** (2 * g), precision)
        return lower, upper
    root = sqrt_enclosure(q, precision)
    lower = (root - 1).pow_int(2 * g)
    upper = (root + 1).pow_int(2 * g)
    return lower, upper


def h_lmd(q: int, g: int) -> Fraction:
    """Genus-only lower bound q^{g-1}(q-1)^2 / ((q+1)(g+1)), exact."""
    if q < 2 or g < 0:
        raise ValueError("need q >= 2 and g >= 0")
    return Fraction(q) ** (g - 1) * Fraction((q - 1) ** 2, (q + 1) * (g + 1))


# -- binomial/integral product bound -------------------------------------


@lru_cache(maxsize=None)
def brt_integral(q: int, r: int, Phi: int, m: int) -> Fraction:
    """Exact value of integral_0^{q^-r} (q^-r - t)^m / (1-t)^{Phi+m+1} dt.

    Substituting u = 1 - t and expanding (u - beta)^m binomially, with
    beta = 1 - q^-r, every antiderivative is a pure power (the exponent
    j - Phi - m is always <= -1 for Phi >= 1), so the result is rational.
    """
    if q < 2 or r < 1 or Phi < 1 or m < 0:
        raise ValueError("need q >= 2, r >= 1, Phi >= 1, m >= 0")
    beta = 1 - Fraction(1, q**r)
    total = Fraction(0)
    for j in range(m + 1):
        e = j - Phi - m
        term = Fraction(comb(m, j)) * (-beta) ** (m - j) * (1 - beta**e) / e
        total += term
    return total


@lru_cache(maxsize=None)
def brt_bracket(q: int, r: int, Phi: int, m: int) -> Fraction:
    """Correction-block factor for one degree in the second product.

    Equals (q^r/(q^r-1))^Phi - Phi*C(Phi+m, m)*brt_integral(q, r, Phi, m),
    which collapses to the truncated binomial series
    sum_{n=0}^{m} C(Phi-1+n, n) q^{-rn}; in particular it is 1 at m = 0
    and always >= 1.
    """
    full = (Fraction(q**r, q**r - 1)) ** Phi
    return full - Phi * comb(Phi + m, m) * brt_integral(q, r, Phi, m)


def _bracket_series(q: int, r: int, Phi: int, m: int) -> Fraction:
    """Truncated-series form of brt_bracket, used as an identity check."""
    x = Fraction(1, q**r)
    return sum((comb(Phi - 1 + n, n) * x**n for n in range(m + 1)), Fraction(0))


@dataclass(frozen=True)
class BRTSelection:
    """One admissible choice of degrees and multiplicities for brt_value.

    D1/ell drive the plain binomial product; D2/m drive the q^{g-1}-weighted
    correction product. Degrees with multiplicity zero are omitted (their
    factor is 1 either way).
    """

    D1: frozenset = frozenset()
    ell: Mapping[int, int] = field(default_factory=dict)
    D2: frozenset = frozenset()
    m: Mapping[int, int] = field(default_factory=dict)
    value: Optional[Fraction] = None


def _check_selection(
    q: int, g: int, places: Mapping[int, int], sel: BRTSelection
) -> None:
    for r in sel.D1:
        if not (1 <= r <= g - 1):
            raise ConditionViolated(1, f"degree {r} outside 1..{g - 1}")
    for r in sel.D2:
        if not (1 <= r <= g - 2):
            raise ConditionViolated(2, f"degree {r} outside 1..{g - 2}")
    for r in sel.D1:
        if places.get(r, 0) < 1:
            raise ConditionViolated(3, f"no known place of degree {r}")
    for r in sel.D2:
        if places.get(r, 0) < 1:
            raise ConditionViolated(4, f"no known place of degree {r}")
    if sel.D1:
        if any(sel.ell.get(r, 0) < 0 for r in sel.D1):
            raise ConditionViolated(5, "negative multiplicity")
        if sum(r * sel.ell.get(r, 0) for r in sel.D1) > g - 1:
            raise ConditionViolated(5, "first budget exceeded")
    if sel.D2:
        if any(sel.m.get(r, 0) < 0 for r in sel.D2):
            raise ConditionViolated(6, "negative multiplicity")
        if sum(r * sel.m.get(r, 0) for r in sel.D2) > g - 2:
            raise ConditionViolated(6, "second budget exceeded")


def brt_value(
    q: int, g: int, places: Mapping[int, int], sel: BRTSelection
) -> Fraction:
    """Exact lower bound for the given admissible selection.

    (q-1)^2/((g+1)(q+1) - Phi_q) * (prod_{r in D1} C(Phi_r + ell_r, ell_r)
    + q^{g-1} * prod_{r in D2} bracket_r(m_r)); empty products are 1.
    The weight on the second product is q^{g-1}: with q^g the value exceeds
    a known exact class number (16200) on a reference profile, and only
    q^{g-1} reproduces independently published optima, so q^{g-1} is the
    sound reading.
    """
    _check_selection(q, g, places, sel)
    phi_q = places.get(1, 0)
    denom = (g + 1) * (q + 1) - phi_q
    if denom <= 0:
        raise NonpositivePrefactorDenominator(
            f"(g+1)(q+1) - Phi_q = {denom} <= 0"
        )
    first = 1
    for r in sorted(sel.D1):
        first *= comb(places[r] + sel.ell.get(r, 0), sel.ell.get(r, 0))
    second = Fraction(1)
    for r in sorted(sel.D2):
        second *= brt_bracket(q, r, places[r], sel.m.get(r, 0))
    total = first + Fraction(q) ** (g - 1) * second
    return Fraction((q - 1) ** 2) * total / denom


def _knapsack(budget: int, degrees, factor):
    """Maximize a product of per-degree factors under a weight budget.

    `degrees` yields eligible degrees r; the item (r, t) has weight r*t and
    multiplies the objective by factor(r, t), with factor(r, 0) = 1. Returns
    (best value, {r: t > 0}). Exact rational comparisons, deterministic.
    """
    if budget <= 0:
        return Fraction(1), {}
    degrees = [r for r in sorted(degrees) if r <= budget]
    dp = [Fraction(1)] * (budget + 1)
    picks: list = []
    for r in degrees:
        factors = [factor(r, t) for t in range(budget // r + 1)]
        choice = [0] * (budget + 1)
        new = list(dp)
        for w in range(1, budget + 1):
            for t in range(1, w // r + 1):
                cand = dp[w - r * t] * factors[t]
                if cand > new[w]:
                    new[w] = cand
                    choice[w] = t
        dp = new
        picks.append((r, choice))
    chosen: Dict[int, int] = {}
    w = budget
    for r, choice in reversed(picks):
        t = choice[w]
        if t:
            chosen[r] = t
            w -= r * t
    return dp[budget], chosen


def brt_optimize(q: int, g: int, places: Mapping[int, int]) -> BRTSelection:
    """Best admissible selection, via two independent product knapsacks.

    The two products are maximized separately (they share no variables);
    each knapsack runs over degrees with a known positive place count and
    exact rational values, so the result is the true optimum. The empty
    selection is always admissible, so a value is always returned provided
    the prefactor denominator is positive.
    """
    phi_q = places.get(1, 0)
    denom = (g + 1) * (q + 1) - phi_q
    if denom <= 0:
        raise NonpositivePrefactorDenominator(
            f"(g+1)(q+1) - Phi_q = {denom} <= 0"
        )
    eligible1 = [r for r, c in places.items() if c >= 1 and 1 <= r <= g - 1]
    eligible2 = [r for r, c in places.items() if c >= 1 and 1 <= r <= g - 2]
    _, ell = _knapsack(
        g - 1, eligible1, lambda r, t: Fraction(comb(places[r] + t, t))
    )
    _, mm = _knapsack(g - 2, eligible2, lambda r, t: brt_bracket(q, r, places[r], t))
    sel = BRTSelection(
        D1=frozenset(ell), ell=dict(ell), D2=frozenset(mm), m=dict(mm)
    )
    value = brt_value(q, g, places, sel)
    return BRTSelection(D1=sel.D1, ell=sel.ell, D2=sel.D2, m=sel.m, value=value)


# -- rational-point-count bounds ------------------------------------------


@dataclass(frozen=True)
class AHLVariant:
    """One of the four point-count-driven lower bounds."""

    index: int
    applicable: bool
    value: Optional[Fraction] = None
    enclosure: Optional[Enclosure] = None
    experimental: bool = False
    note: str = ""


@dataclass(frozen=True)
class AHLReport:
    """All four variants plus the best applicable (experimental excluded)."""

    q: int
    g: int
    phi_q: int
    variants: Tuple[AHLVariant, ...]
    best: Optional[Fraction]
    best_variant: Optional[int]

    def variant(self, index: int) -> AHLVariant:
        return self.variants[index - 1]


def _ahl_variant1(
    q: int, g: int, phi_q: int, precision: int
) -> Optional[Enclosure]:
    """Literal evaluation of the multiplier form of variant (1).

    With x = ((sqrt(q)+1)/(sqrt(q)-1))^2 the published multiplier
    M(q) = e*log(x^{1/x - 1}) / (x^{1/x} - 1) is negative for every q >= 2
    under this parse, so the variant is useless as a lower bound and ships
    disabled; the enclosure is exposed for inspection only.
    """
    if g < 1:
        return None
    root = sqrt_enclosure(q, precision)
    x = ((root + 1) / (root - 1)).pow_int(2)
    logx = x.log()
    inv_x = 1 / x
    # M(q) = e * log(x^{1/x-1}) / (x^{1/x}-1) = e*(1/x-1)*log(x) / (x^{1/x}-1)
    e_const = Enclosure.exact(1, precision).exp()
    m_val = e_const * (inv_x - 1) * logx / ((logx * inv_x).exp() - 1)
    base = Enclosure.exact(Fraction(phi_q - (q + 1), g) + (q + 1), precision)
    # m_val is negative for q >= 2; pow_int requires a nonnegative base, so
    # multiply the g factors of (M(q)*base) out directly to keep the sign.
    result = Enclosure.exact(1, precision)
    for _ in range(g):
        result = result * (m_val * base)
    return result


def ahl_bounds(
    q: int,
    g: int,
    places: Mapping[int, int],
    include_experimental: bool = False,
    precision: int = DEFAULT_PRECISION,
) -> AHLReport:
    """Evaluate the four point-count bounds; best skips the experimental one.

    Unknown higher-degree place counts contribute zero (every omitted term
    is nonnegative, so dropping them keeps the bound valid). Variant (3)
    needs Phi_q >= g(sqrt(q)-1)+1, tested exactly; variant (2) needs
    g >= 1; variant (4) needs a positive prefactor denominator.
    """
    phi_q = places.get(1, 0)
    variants = []

    enc1 = _ahl_variant1(q, g, phi_q, precision)
    variants.append(
        AHLVariant(
            index=1,
            applicable=False,
            enclosure=enc1,
            experimental=True,
            note="negative multiplier under the literal parse; disabled",
        )
    )

    if g >= 1:
        acc = comb(phi_q + 2 * g - 2, 2 * g - 1)
        for r in range(2, 2 * g):
            phi_r = places.get(r, 0)
            if phi_r:
                acc += phi_r * comb(phi_q + 2 * g - 2 - r, 2 * g - 1 - r)
        v2 = Fraction(q - 1, q**g - 1) * acc
        variants.append(AHLVariant(index=2, applicable=True, value=v2))
    else:
        variants.append(
            AHLVariant(index=2, applicable=False, note="needs g >= 1")
        )

    # Phi_q >= g(sqrt(q)-1)+1  <=>  Phi_q - 1 + g >= g*sqrt(q), tested by
    # squaring (exact, no floating sqrt).
    lhs = phi_q - 1 + g
    if lhs >= 0 and lhs * lhs >= g * g * q:
        v3 = Fraction(
            comb(phi_q + g - 1, g) - q * comb(phi_q + g - 3, g - 2)
        )
        variants.append(AHLVariant(index=3, applicable=True, value=v3))
    else:
        variants.append(
            AHLVariant(
                index=3,
                applicable=False,
                note="needs Phi_q >= g(sqrt(q)-1)+1",
            )
        )

    denom = (g + 1) * (q + 1) - phi_q
    if denom > 0:
        acc4 = comb(phi_q + g - 2, g - 2)
        for r in range(g):
            acc4 += q ** (g - 1 - r) * comb(phi_q + r - 1, r)
        v4 = Fraction((q - 1) ** 2, denom) * acc4
        variants.append(AHLVariant(index=4, applicable=True, value=v4))
    else:
        variants.append(
            AHLVariant(
                index=4, applicable=False, note="nonpositive prefactor"
            )
        )

    candidates = [
        v.value
        for v in variants
        if v.applicable and v.value is not None and not v.experimental
    ]
    if include_experimental and enc1 is not None and enc1.lo > 0:
        candidates.append(enc1.lo_fraction())
    best = max(candidates) if candidates else None
    best_variant = None
    if best is not None:
        for v in variants:
            if v.applicable and v.value == best:
                best_variant = v.index
                break
    return AHLReport(
        q=q,
        g=g,
        phi_q=phi_q,
        variants=tuple(variants),
        best=best,
        best_variant=best_variant,
    )
