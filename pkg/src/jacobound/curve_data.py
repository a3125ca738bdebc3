"""Curve profiles: partial place/point counts over a finite field.

A profile records what is actually known about a curve — the field size
``q``, the genus ``g``, and the number of places of selected degrees
(optionally, rational point counts over selected extension fields). All
bound computations consume a validated profile plus per-degree point
estimates produced by :func:`estimate_points`.

Throughout, ``places[d]`` is the number of closed points of degree ``d``
and ``points[n]`` is the number of rational points over the degree-``n``
extension; they are linked by ``points[n] = sum(d * places[d] for d | n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Tuple

from .errors import (
    InconsistentCounts,
    MissingDivisor,
    NegativeCount,
    NonPrimePower,
    ProfileError,
    WeilViolation,
)

__all__ = [
    "CurveProfile",
    "PointEstimate",
    "PointEstimates",
    "estimate_points",
    "is_prime_power",
    "places_from_points",
    "points_from_places",
    "profile_from_dict",
    "serre_interval",
    "validate_profile",
]

FILL_POLICIES = ("best", "serre-only", "zero-fill")


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime_power(q: int) -> bool:
    """True when q = p**k for a prime p and k >= 1."""
    if q < 2:
        return False
    p = None
    m = q
    for cand in range(2, math.isqrt(q) + 1):
        if m % cand == 0:
            p = cand
            break
    if p is None:
        return True  # q itself is prime
    while m % p == 0:
        m //= p
    return m == 1


def serre_interval(q: int, g: int, n: int = 1) -> Tuple[int, int]:
    """Sharp a-priori window for the degree-n point count.

    Returns (lo, hi) with lo = max(0, q**n + 1 - g*m) and
    hi = q**n + 1 + g*m where m = floor(sqrt(4*q**n)), computed by exact
    integer square root. Every genus-g curve over F_q has its point count
    over the degree-n extension inside this closed interval.
    """
    qn = q**n
    m = math.isqrt(4 * qn)
    return (max(0, qn + 1 - g * m), qn + 1 + g * m)


@dataclass
class CurveProfile:
    """Partial knowledge of a curve over a finite field.

    Attributes:
        q: field size (prime power, >= 2).
        g: genus (integer >= 0).
        places: degree -> number of closed points of that degree.
        points: extension degree -> rational point count over that extension.
        name: optional label used in reports.
    """

    q: int
    g: int
    places: Dict[int, int] = field(default_factory=dict)
    points: Dict[int, int] = field(default_factory=dict)
    name: Optional[str] = None


def points_from_places(places: Mapping[int, int], n: int) -> int:
    """Exact degree-n point count from complete divisor place data.

    Raises MissingDivisor unless places[d] is present for every d | n.
    """
    total = 0
    for d in _divisors(n):
        if d not in places:
            raise MissingDivisor(n, d)
        total += d * places[d]
    return total


def places_from_points(points: Mapping[int, int], n: int) -> int:
    """Number of degree-n places from point counts over all divisors of n.

    Inverts the divisor sum degree by degree. Raises MissingDivisor when a
    needed point count is absent and InconsistentCounts when the inversion
    yields a negative or non-integral place count.
    """
    divs = _divisors(n)
    for d in divs:
        if d not in points:
            raise MissingDivisor(n, d)
    phi: Dict[int, int] = {}
    for d in divs:
        partial = sum(e * phi[e] for e in _divisors(d) if e < d)
        num = points[d] - partial
        if num % d != 0 or num < 0:
            raise InconsistentCounts(d, partial, points[d])
        phi[d] = num // d
    return phi[n]


def validate_profile(profile: CurveProfile) -> CurveProfile:
    """Check a profile for structural and arithmetic consistency.

    Verifies the field size and genus, nonnegativity and integrality of all
    counts, agreement between given point counts and those forced by place
    data, and that every count (given, derived, or partially derived) fits
    inside its Weil-Serre window. Returns the profile unchanged.
    """
    q, g = profile.q, profile.g
    if not isinstance(q, int) or isinstance(q, bool) or not is_prime_power(q):
        raise NonPrimePower(f"field size {q!r} is not a prime power >= 2")
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise ProfileError(f"genus must be an integer >= 0, got {g!r}")

    for label, mapping in (("places", profile.places), ("points", profile.points)):
        for d, c in mapping.items():
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise ProfileError(f"{label} key {d!r} is not a positive integer")
            if not isinstance(c, int) or isinstance(c, bool):
                raise ProfileError(f"{label}[{d}] = {c!r} is not an integer")
            if c < 0:
                raise NegativeCount(f"{label}[{d}] = {c} is negative")

    degrees = set(profile.points) | set(profile.places)
    for n in sorted(degrees):
        window = serre_interval(q, g, n)
        partial = sum(d * profile.places[d] for d in _divisors(n) if d in profile.places)
        complete = all(d in profile.places for d in _divisors(n))
        if n in profile.points:
            c = profile.points[n]
            if not window[0] <= c <= window[1]:
                raise WeilViolation(n, c, window)
            if complete and partial != c:
                raise InconsistentCounts(n, partial, c)
        elif complete and not window[0] <= partial <= window[1]:
            raise WeilViolation(n, partial, window)
        # Even with some divisors unknown, the known places already force
        # at least `partial` points over the degree-n extension.
        if partial > window[1]:
            raise WeilViolation(n, partial, window)
    return profile


def profile_from_dict(data: Mapping[str, object]) -> CurveProfile:
    """Build and validate a CurveProfile from parsed JSON data.

    Required keys: q, g, places. Optional: points, name. Any other key is
    rejected. Mapping keys may be strings (as JSON forces) or integers.
    """
    if not isinstance(data, Mapping):
        raise ProfileError("profile must be a JSON object")
    allowed = {"q", "g", "places", "points", "name"}
    unknown = set(data) - allowed
    if unknown:
        raise ProfileError(f"unknown profile keys: {sorted(unknown)}")
    for key in ("q", "g", "places"):
        if key not in data:
            raise ProfileError(f"profile is missing required key {key!r}")

    def int_keyed(raw: object, label: str) -> Dict[int, int]:
        if not isinstance(raw, Mapping):
            raise ProfileError(f"{label} must be an object of degree: count")
        out: Dict[int, int] = {}
        for k, v in raw.items():
            if isinstance(k, int) and not isinstance(k, bool):
                kk = k
            elif isinstance(k, str):
                try:
                    kk = int(k)
                except ValueError:
                    raise ProfileError(f"{label} key {k!r} is not an integer") from None
            else:
                raise ProfileError(f"{label} key {k!r} is not an integer")
            if not isinstance(v, int) or isinstance(v, bool):
                raise ProfileError(f"{label}[{k}] = {v!r} is not an integer")
            if kk in out:
                raise ProfileError(f"{label} repeats degree {kk}")
            out[kk] = v
        return out

    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ProfileError("name must be a string")
    q, g = data["q"], data["g"]
    if not isinstance(q, int) or isinstance(q, bool):
        raise ProfileError(f"q must be an integer, got {q!r}")
    if not isinstance(g, int) or isinstance(g, bool):
        raise ProfileError(f"g must be an integer, got {g!r}")
    profile = CurveProfile(
        q=q,
        g=g,
        places=int_keyed(data["places"], "places"),
        points=int_keyed(data.get("points", {}), "points"),
        name=name,
    )
    return validate_profile(profile)


@dataclass(frozen=True)
class PointEstimate:
    """Rigorous window [lower, upper] for one degree's point count."""

    degree: int
    lower: int
    upper: int
    exact: bool

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"degree {self.degree}: lower {self.lower} > upper {self.upper}")


@dataclass
class PointEstimates:
    """Per-degree point-count windows for degrees 1..n_max."""

    q: int
    g: int
    n_max: int
    policy: str
    per_degree: Dict[int, PointEstimate]

    def __getitem__(self, n: int) -> PointEstimate:
        return self.per_degree[n]

    def __iter__(self) -> Iterator[PointEstimate]:
        return iter(self.per_degree[n] for n in range(1, self.n_max + 1))

    def __len__(self) -> int:
        return self.n_max


def estimate_points(
    profile: CurveProfile, n_max: int, policy: str = "best"
) -> PointEstimates:
    """Rigorous per-degree point-count windows for degrees 1..n_max.

    A degree is exact when its count is given directly or forced by
    complete divisor place data. Unknown degrees are filled according to
    `policy`:

    - "best": lower = max of 0, the Weil-Serre lower endpoint, the partial
      divisor sum over known place counts, and monotonicity (the count over
      a subfield never exceeds the count over the field); upper = the
      Weil-Serre upper endpoint.
    - "serre-only": lower = max(0, Weil-Serre lower endpoint); ignores
      partial place data at unknown degrees.
    - "zero-fill": lower = the partial divisor sum alone (unknown places
      count zero).
    """
    if policy not in FILL_POLICIES:
        raise ValueError(f"unknown fill policy {policy!r}; expected one of {FILL_POLICIES}")
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 1:
        raise ValueError(f"n_max must be a positive integer, got {n_max!r}")
    validate_profile(profile)

    per_degree: Dict[int, PointEstimate] = {}
    for n in range(1, n_max + 1):
        window = serre_interval(profile.q, profile.g, n)
        divs = _divisors(n)
        partial = sum(d * profile.places[d] for d in divs if d in profile.places)
        complete = all(d in profile.places for d in divs)
        if n in profile.points:
            value = profile.points[n]
            per_degree[n] = PointEstimate(n, value, value, True)
            continue
        if complete:
            per_degree[n] = PointEstimate(n, partial, partial, True)
            continue
        if policy == "best":
            lower = max(0, window[0], partial)
            for d in divs:
                if d < n and d in per_degree:
                    lower = max(lower, per_degree[d].lower)
        elif policy == "serre-only":
            lower = max(0, window[0])
        else:  # zero-fill
            lower = partial
        upper = window[1]
        if lower > upper:
            raise WeilViolation(n, lower, window)
        per_degree[n] = PointEstimate(n, lower, upper, lower == upper)
    return PointEstimates(profile.q, profile.g, n_max, policy, per_degree)
