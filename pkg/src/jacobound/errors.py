"""Exception types raised by the public API."""

from __future__ import annotations


class JacoboundError(Exception):
    """Base class for all errors raised by this package."""


class ProfileError(JacoboundError):
    """Invalid curve profile data."""


class NonPrimePower(ProfileError):
    """Field size is not a prime power."""


class NegativeCount(ProfileError):
    """A place or point count is negative."""


class WeilViolation(ProfileError):
    """A point count falls outside the Weil-Serre interval."""

    def __init__(self, degree: int, count: int, interval: tuple[int, int]):
        self.degree = degree
        self.count = count
        self.interval = interval
        super().__init__(
            f"count {count} over the degree-{degree} extension is outside "
            f"the admissible interval [{interval[0]}, {interval[1]}]"
        )


class InconsistentCounts(ProfileError):
    """Point and place counts disagree at one degree."""

    def __init__(self, degree: int, from_places: int, given: int):
        self.degree = degree
        super().__init__(
            f"degree {degree}: place data forces {from_places} points "
            f"but {given} were given"
        )


class MissingDivisor(ProfileError):
    """A place count needed by a divisor-sum conversion is absent."""

    def __init__(self, degree: int, missing: int):
        self.degree = degree
        self.missing = missing
        super().__init__(f"degree {degree} needs the count for divisor {missing}")


class InvalidN(JacoboundError):
    """Truncation order must be a positive integer."""


class IncompleteEstimates(JacoboundError):
    """Point estimates do not cover every degree up to the truncation order."""


class NonIntegralCoefficient(JacoboundError):
    """Point counts do not come from an integral zeta numerator."""


class NonpositiveClassNumber(JacoboundError):
    """Recovered numerator evaluates to a nonpositive class number."""


class TraceOutOfRange(JacoboundError):
    """A synthetic trace violates |t| <= floor(2*sqrt(q))."""


class SingularCurve(JacoboundError):
    """Short Weierstrass discriminant vanishes."""


class NonPrimeField(JacoboundError):
    """Brute-force point counting needs an odd prime field of size <= 1000."""


class ConditionViolated(JacoboundError):
    """A divisor-count selection violates one of the admissibility conditions."""

    def __init__(self, condition: int, detail: str = ""):
        self.condition = condition
        msg = f"selection violates condition ({condition})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NonpositivePrefactorDenominator(JacoboundError):
    """(g+1)(q+1) - Phi_q must be positive for the divisor-count bounds."""


class PrecisionError(JacoboundError):
    """Requested output digits unreachable within the working-precision cap."""
