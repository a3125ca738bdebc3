"""Exact zeta data for fully known curves.

When enough point counts are known (degrees 1..g), the numerator of the
zeta function is determined exactly and everything else — class number,
point and place counts in all degrees, effective divisor counts, the
residue constant, and the exact truncation defect of the logarithmic
point-count formula — follows by integer arithmetic. This module is the
oracle the bound computations are tested against.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Union

from .errors import (
    InvalidN,
    NonIntegralCoefficient,
    NonPrimeField,
    NonpositiveClassNumber,
    ProfileError,
    SingularCurve,
    TraceOutOfRange,
)
from .rounding import DEFAULT_PRECISION, Enclosure, log_enclosure

__all__ = [
    "ZetaData",
    "count_elliptic",
    "effective_divisor_counts",
    "eps3_exact",
    "numerator_from_counts",
    "synthesize",
]


class ZetaData:
    """Numerator coefficients of a curve's zeta function, plus derived data.

    The zeta function is P(T) / ((1 - T)(1 - q T)) with
    P(T) = sum(a[i] * T**i for i in range(2g + 1)); the class number is
    h = P(1). Coefficients must be integers with a[0] = 1 and satisfy the
    functional equation a[2g - i] = q**(g - i) * a[i].
    """

    def __init__(self, q: int, a: Sequence[int]):
        if not isinstance(q, int) or isinstance(q, bool) or q < 2:
            raise ValueError(f"field size must be an integer >= 2, got {q!r}")
        coeffs = list(a)
        if not coeffs or len(coeffs) % 2 == 0:
            raise ValueError("numerator needs an odd number of coefficients (2g + 1)")
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise NonIntegralCoefficient(f"coefficient {c!r} is not an integer")
        if coeffs[0] != 1:
            raise ValueError(f"leading coefficient must be 1, got {coeffs[0]}")
        g = (len(coeffs) - 1) // 2
        for i in range(g):
            expected = q ** (g - i) * coeffs[i]
            if coeffs[2 * g - i] != expected:
                raise ValueError(
                    f"functional equation fails at index {2 * g - i}: "
                    f"expected {expected}, got {coeffs[2 * g - i]}"
                )
        h = sum(coeffs)
        if h <= 0:
            raise NonpositiveClassNumber(f"numerator evaluates to {h} at 1")
        self.q = q
        self.g = g
        self.a = tuple(coeffs)
        self.h = h
        self._power_sums: List[int] = [0]  # index n holds s_n; s_0 unused

    # -- point and place counts -----------------------------------------

    def _power_sum(self, n: int) -> int:
        """s_n = q**n + 1 - N_n, extended by the numerator's recursion."""
        while len(self._power_sums) <= n:
            k = len(self._power_sums)
            s = self._power_sums
            if k <= 2 * self.g:
                val = -k * self.a[k] - sum(s[i] * self.a[k - i] for i in range(1, k))
            else:
                val = -sum(self.a[i] * s[k - i] for i in range(1, 2 * self.g + 1))
            s.append(val)
        return self._power_sums[n]

    def point_count(self, n: int) -> int:
        """Rational points over the degree-n extension field."""
        if n < 1:
            raise InvalidN(f"degree must be >= 1, got {n}")
        return self.q**n + 1 - self._power_sum(n)

    def place_count(self, n: int) -> int:
        """Closed points of degree exactly n (Moebius inversion of N)."""
        if n < 1:
            raise InvalidN(f"degree must be >= 1, got {n}")
        total = self.point_count(n)
        phi: Dict[int, int] = {}
        for d in sorted(_divisors(n)):
            inner = sum(e * phi[e] for e in _divisors(d) if e < d)
            phi[d] = (self.point_count(d) - inner) // d
        return phi[n]

    def place_counts(self, n_max: int) -> Dict[int, int]:
        """Place counts for every degree 1..n_max."""
        phi: Dict[int, int] = {}
        for d in range(1, n_max + 1):
            inner = sum(e * phi[e] for e in _divisors(d) if e < d)
            phi[d] = (self.point_count(d) - inner) // d
        return phi

    # -- divisors and the residue ----------------------------------------

    def effective_divisor_count(self, n: int) -> int:
        """Number of effective divisors of degree n (n >= 0)."""
        if n < 0:
            raise InvalidN(f"degree must be >= 0, got {n}")
        q = self.q
        top = min(n, 2 * self.g)
        return sum(
            self.a[i] * (q ** (n - i + 1) - 1) // (q - 1) for i in range(top + 1)
        )

    def effective_divisor_counts(self, n_max: int) -> List[int]:
        """Effective divisor counts for degrees 0..n_max."""
        return [self.effective_divisor_count(n) for n in range(n_max + 1)]

    def power_sum(self, n: int) -> int:
        """n-th power sum of the inverse roots: s_n = q**n + 1 - N_n."""
        if n < 1:
            raise InvalidN(f"degree must be >= 1, got {n}")
        return self._power_sum(n)

    def kappa_log_q(self) -> Fraction:
        """Exact value of kappa * log q = h * q**(1 - g) / (q - 1)."""
        return Fraction(self.h * self.q, self.q**self.g * (self.q - 1))

    def kappa(self, precision: int = DEFAULT_PRECISION) -> Enclosure:
        """Residue constant h * q**(1 - g) / ((q - 1) * log q)."""
        exact = self.kappa_log_q()
        return Enclosure.exact(exact, precision) / log_enclosure(self.q, precision)

    # -- truncation defect -------------------------------------------------

    def eps3_exact(self, n_trunc: int, precision: int = DEFAULT_PRECISION) -> Enclosure:
        """Exact defect of the truncated logarithmic point-count formula.

        Returns an enclosure of
        g*log q + sum_{f<=N} N_f/(f q**f) - sum_{n<=N} (1 + q**-n)/n - log h
        with both rational sums carried exactly; only the two logarithms
        are rounded (outward).
        """
        if not isinstance(n_trunc, int) or isinstance(n_trunc, bool) or n_trunc < 1:
            raise InvalidN(f"truncation order must be a positive integer, got {n_trunc!r}")
        q = self.q
        rational = Fraction(0)
        for n in range(1, n_trunc + 1):
            rational += Fraction(self.point_count(n), n * q**n)
            rational -= Fraction(q**n + 1, n * q**n)
        log_q = log_enclosure(q, precision)
        log_h = log_enclosure(self.h, precision)
        return log_q * self.g - log_h + Enclosure.exact(rational, precision)

    def __repr__(self) -> str:
        return f"ZetaData(q={self.q}, g={self.g}, h={self.h})"


def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def numerator_from_counts(
    q: int, g: int, counts: Union[Mapping[int, int], Sequence[int]]
) -> ZetaData:
    """Recover the exact zeta numerator from point counts in degrees 1..g.

    `counts` maps degree -> point count (or lists counts for degrees
    1, 2, ..., in order) and must cover every degree up to g. The Newton
    recursion determines a_1..a_g; the functional equation fills the rest.
    Raises NonIntegralCoefficient or NonpositiveClassNumber when the counts
    do not come from a genuine genus-g curve numerator.
    """
    if not isinstance(g, int) or isinstance(g, bool) or g < 0:
        raise ProfileError(f"genus must be an integer >= 0, got {g!r}")
    if isinstance(counts, Mapping):
        table = dict(counts)
    else:
        table = {i + 1: c for i, c in enumerate(counts)}
    missing = [n for n in range(1, g + 1) if n not in table]
    if missing:
        raise ProfileError(f"need point counts for degrees 1..{g}; missing {missing}")

    s = [0] + [q**n + 1 - table[n] for n in range(1, g + 1)]
    a = [1] + [0] * (2 * g)
    for k in range(1, g + 1):
        acc = sum(s[i] * a[k - i] for i in range(1, k + 1))
        if acc % k != 0:
            raise NonIntegralCoefficient(
                f"degree-{k} coefficient {-acc}/{k} is not an integer"
            )
        a[k] = -acc // k
    for i in range(g):
        a[2 * g - i] = q ** (g - i) * a[i]
    return ZetaData(q, a)


def synthesize(q: int, traces: Sequence[int]) -> ZetaData:
    """Zeta data of a product of elliptic-type factors with given traces.

    The numerator is the product of 1 - t*T + q*T**2 over the listed
    traces, so the genus equals len(traces) and the class number is
    prod(q + 1 - t). Each trace must satisfy |t| <= isqrt(4q); all inverse
    roots then have absolute value sqrt(q), so the result is valid input
    for the explicit-formula bounds even when no actual curve has these
    counts. An empty trace list yields the genus-0 data a = [1].
    """
    limit = math.isqrt(4 * q)
    coeffs = [1]
    for t in traces:
        if not isinstance(t, int) or isinstance(t, bool):
            raise TraceOutOfRange(f"trace {t!r} is not an integer")
        if abs(t) > limit:
            raise TraceOutOfRange(f"|{t}| exceeds isqrt(4*{q}) = {limit}")
        new = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            new[i] += c
            new[i + 1] -= t * c
            new[i + 2] += q * c
        coeffs = new
    return ZetaData(q, coeffs)


def effective_divisor_counts(z: ZetaData, up_to: int) -> List[int]:
    """Effective divisor counts A_0..A_{up_to} of the given zeta data."""
    return z.effective_divisor_counts(up_to)


def eps3_exact(z: ZetaData, n_trunc: int, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Exact truncation defect of the logarithmic point-count formula."""
    return z.eps3_exact(n_trunc, precision)


def count_elliptic(p: int, a: int, b: int) -> int:
    """Points on y**2 = x**3 + a*x + b over F_p, including the point at infinity.

    Brute-force counting with a quadratic-residue table; restricted to odd
    prime p <= 1000. Raises SingularCurve when the discriminant vanishes.
    """
    if not isinstance(p, int) or isinstance(p, bool) or p < 3 or p > 1000:
        raise NonPrimeField(f"need an odd prime field of size 3..1000, got {p!r}")
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            raise NonPrimeField(f"{p} is not prime")
    if (-16 * (4 * a**3 + 27 * b**2)) % p == 0:
        raise SingularCurve(f"discriminant vanishes mod {p} for a={a}, b={b}")
    # chi[v] = 1 + (Legendre symbol of v): number of square roots of v mod p.
    roots = [0] * p
    for x in range(p):
        roots[x * x % p] += 1
    return 1 + sum(roots[(x * x * x + a * x + b) % p] for x in range(p))
