"""Outward-rounded interval arithmetic on MPFR floats.

Every quantity in this package that cannot be held as an exact rational is
carried as an :class:`Enclosure`, a closed interval whose endpoints are MPFR
floats rounded away from the enclosed real. Lower bounds are read off the
``lo`` endpoint and upper bounds off ``hi``, so rounding error can never
flip an inequality.
"""

from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Callable, Optional, Tuple

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import PrecisionError

DEFAULT_PRECISION = 256
PRECISION_CAP = 4096

_Rational = (int, Fraction)


def _down(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


def _up(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


def _to_mpq(value) -> mpq:
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


class Enclosure:
    """Closed interval [lo, hi] guaranteed to contain one real value."""

    __slots__ = ("lo", "hi", "precision")

    def __init__(self, lo: mpfr, hi: mpfr, precision: int):
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
            raise ValueError("NaN endpoint")
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.precision = precision

    # -- construction -------------------------------------------------

    @classmethod
    def exact(cls, value, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        """Enclose an int, Fraction or float (converted without error)."""
        if isinstance(value, float):
            q = mpq(Fraction(value))
        else:
            q = _to_mpq(value)
        with _down(precision):
            lo = mpfr(q)
        with _up(precision):
            hi = mpfr(q)
        return cls(lo, hi, precision)

    @classmethod
    def from_endpoints(cls, lo, hi, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        qlo, qhi = _to_mpq(lo), _to_mpq(hi)
        with _down(precision):
            flo = mpfr(qlo)
        with _up(precision):
            fhi = mpfr(qhi)
        return cls(flo, fhi, precision)

    # -- helpers ------------------------------------------------------

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, _Rational):
            return Enclosure.exact(other, self.precision)
        return NotImplemented  # type: ignore[return-value]

    def _prec(self, other: "Enclosure") -> int:
        return max(self.precision, other.precision)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self._prec(other)
        with _down(p):
            lo = self.lo + other.lo
        with _up(p):
            hi = self.hi + other.hi
        return Enclosure(lo, hi, p)

    __radd__ = __add__

    def __neg__(self):
        # Negation must run inside an explicit context: the ambient gmpy2
        # context may have lower precision and would silently round the
        # endpoints.  Negation at the operand's own precision is exact.
        with _down(self.precision):
            lo = -self.hi
        with _up(self.precision):
            hi = -self.lo
        return Enclosure(lo, hi, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self._prec(other)
        pairs = (
            (self.lo, other.lo),
            (self.lo, other.hi),
            (self.hi, other.lo),
            (self.hi, other.hi),
        )
        with _down(p):
            lo = min(gmpy2.mul(a, b) for a, b in pairs)
        with _up(p):
            hi = max(gmpy2.mul(a, b) for a, b in pairs)
        return Enclosure(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        p = self._prec(other)
        pairs = (
            (self.lo, other.lo),
            (self.lo, other.hi),
            (self.hi, other.lo),
            (self.hi, other.hi),
        )
        with _down(p):
            lo = min(gmpy2.div(a, b) for a, b in pairs)
        with _up(p):
            hi = max(gmpy2.div(a, b) for a, b in pairs)
        return Enclosure(lo, hi, p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # -- elementary functions ------------------------------------------

    def log(self) -> "Enclosure":
        if self.lo <= 0:
            raise ValueError("log needs a positive interval")
        with _down(self.precision):
            lo = gmpy2.log(self.lo)
        with _up(self.precision):
            hi = gmpy2.log(self.hi)
        return Enclosure(lo, hi, self.precision)

    def exp(self) -> "Enclosure":
        with _down(self.precision):
            lo = gmpy2.exp(self.lo)
        with _up(self.precision):
            hi = gmpy2.exp(self.hi)
        return Enclosure(lo, hi, self.precision)

    def sqrt(self) -> "Enclosure":
        if self.lo < 0:
            raise ValueError("sqrt needs a nonnegative interval")
        with _down(self.precision):
            lo = gmpy2.sqrt(self.lo)
        with _up(self.precision):
            hi = gmpy2.sqrt(self.hi)
        return Enclosure(lo, hi, self.precision)

    def pow_int(self, k: int) -> "Enclosure":
        """Integer power; the base interval must be nonnegative."""
        if k < 0:
            return 1 / self.pow_int(-k)
        if k == 0:
            return Enclosure.exact(1, self.precision)
        if self.lo < 0:
            raise ValueError("pow_int needs a nonnegative interval")
        with _down(self.precision):
            lo = self.lo ** k
        with _up(self.precision):
            hi = self.hi ** k
        return Enclosure(lo, hi, self.precision)

    # -- inspection ----------------------------------------------------

    def lo_fraction(self) -> Fraction:
        q = mpq(self.lo)
        return Fraction(int(q.numerator), int(q.denominator))

    def hi_fraction(self) -> Fraction:
        q = mpq(self.hi)
        return Fraction(int(q.numerator), int(q.denominator))

    def contains(self, value) -> bool:
        q = _to_mpq(value) if isinstance(value, _Rational) else value
        return self.lo <= q <= self.hi

    def midpoint(self) -> mpfr:
        with gmpy2.context(precision=self.precision):
            return (self.lo + self.hi) / 2

    def radius(self) -> mpfr:
        with _up(self.precision):
            return (self.hi - self.lo) / 2

    def width_fraction(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    def is_finite(self) -> bool:
        return gmpy2.is_finite(self.lo) and gmpy2.is_finite(self.hi)

    def __repr__(self) -> str:
        return f"Enclosure({self.lo!r}, {self.hi!r})"


def log_enclosure(value, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of log(value) for a positive int or Fraction."""
    return Enclosure.exact(value, precision).log()


def sqrt_enclosure(value, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of sqrt(value) for a nonnegative int or Fraction."""
    return Enclosure.exact(value, precision).sqrt()


# -- rendering ---------------------------------------------------------


def ceil_lo(enc: Enclosure) -> int:
    """Smallest integer >= the enclosed value's rigorous lower endpoint.

    For an integer-valued quantity known to be >= the enclosed bound, this
    is the sharpest integer lower bound that is still rigorous.
    """
    return math.ceil(enc.lo_fraction())


def floor_hi(enc: Enclosure) -> int:
    """Largest integer <= the enclosed value's rigorous upper endpoint."""
    return math.floor(enc.hi_fraction())


def fraction_to_sig_decimal(value: Fraction, sig_digits: int) -> Decimal:
    """Round an exact Fraction to `sig_digits` significant digits, half-even.

    Uses decimal division at context precision `sig_digits`, which rounds
    the exact rational once (no double rounding).
    """
    if sig_digits < 1:
        raise ValueError("sig_digits must be >= 1")
    if value == 0:
        return Decimal(0)
    with localcontext() as ctx:
        ctx.prec = sig_digits
        ctx.rounding = ROUND_HALF_EVEN
        return Decimal(value.numerator) / Decimal(value.denominator)


def decimal_str(d: Decimal) -> str:
    return str(d).replace("E", "e")


def render_significant(enc: Enclosure, sig_digits: int) -> Optional[str]:
    """Render to `sig_digits` significant digits, or None if ambiguous.

    Returns a string only when both endpoints round to the same digits, so
    the printed value is independent of where the true value lies inside
    the enclosure. A None return signals the caller to retry at higher
    working precision.
    """
    flo = enc.lo_fraction()
    fhi = enc.hi_fraction()
    dlo = fraction_to_sig_decimal(flo, sig_digits)
    if flo == fhi:
        return decimal_str(dlo)
    dhi = fraction_to_sig_decimal(fhi, sig_digits)
    if dlo == dhi:
        return decimal_str(dlo)
    return None


def render_adaptive(
    compute: Callable[[int], Enclosure],
    sig_digits: int,
    precision: int = DEFAULT_PRECISION,
) -> Tuple[str, Enclosure]:
    """Evaluate `compute(precision)` and render, doubling precision on demand.

    Raises PrecisionError if the enclosure stays too wide to pin down
    `sig_digits` significant digits at the precision cap.
    """
    p = precision
    enc = compute(p)
    while True:
        text = render_significant(enc, sig_digits)
        if text is not None:
            return text, enc
        p *= 2
        if p > PRECISION_CAP:
            raise PrecisionError(
                f"cannot fix {sig_digits} significant digits below "
                f"{PRECISION_CAP} bits of working precision"
            )
        enc = compute(p)
