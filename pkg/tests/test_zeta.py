"""Exact zeta-function oracle: numerators, counts, divisors, residue."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from jacobound import ZetaData, count_elliptic, numerator_from_counts, synthesize
from jacobound.errors import (
    InvalidN,
    NonIntegralCoefficient,
    NonPrimeField,
    NonpositiveClassNumber,
    ProfileError,
    SingularCurve,
    TraceOutOfRange,
)
from jacobound.rounding import log_enclosure
from jacobound.zeta_oracle import eps3_exact

from conftest import oracle_elliptic, oracle_genus0, oracle_genus2, random_synthetic


def test_genus2_fixture_coefficients():
    z = oracle_genus2()
    assert z.a == (1, 0, 0, 0, 4)
    assert z.h == 5
    assert z.g == 2
    assert z.point_count(1) == 3
    assert z.point_count(2) == 5
    assert z.place_counts(2) == {1: 3, 2: 1}


def test_elliptic_fixture():
    z = oracle_elliptic()
    assert z.a == (1, 0, 2)
    assert z.h == 3


def test_genus0_fixture():
    z = oracle_genus0()
    assert z.a == (1,)
    assert z.h == 1
    assert z.point_count(3) == 2**3 + 1


def test_constructor_rejects_bad_numerators():
    with pytest.raises(ValueError):
        ZetaData(2, [1, 0])  # even length
    with pytest.raises(ValueError):
        ZetaData(2, [2, 0, 4])  # leading coefficient != 1
    with pytest.raises(ValueError):
        ZetaData(2, [1, 1, 1])  # functional equation fails (a2 != q*a0)
    with pytest.raises(NonIntegralCoefficient):
        ZetaData(2, [1, Fraction(1, 2), 2])
    with pytest.raises(NonpositiveClassNumber):
        ZetaData(2, [1, -3, 2])  # P(1) = 0


def test_point_count_functional_equation_consistency():
    # all inverse roots have |alpha| = sqrt(q): check |s_n| <= 2g q^(n/2)
    rng = random.Random(11)
    for q in (2, 3, 5, 9):
        z = random_synthetic(rng, q, 5)
        for n in range(1, 25):
            assert abs(z.power_sum(n)) <= 2 * z.g * math.isqrt(q**n * 4) / 2 + 1


def test_place_counts_invert_point_counts():
    z = oracle_genus2()
    for n in range(1, 15):
        total = sum(
            d * z.place_count(d) for d in range(1, n + 1) if n % d == 0
        )
        assert total == z.point_count(n)


def test_place_counts_nonnegative_for_oracles():
    for z in (oracle_elliptic(), oracle_genus2(), oracle_genus0()):
        counts = z.place_counts(20)
        assert all(c >= 0 for c in counts.values())


def test_effective_divisor_identities():
    z = oracle_genus2()
    A = z.effective_divisor_counts(4)
    phi1, phi2 = z.place_count(1), z.place_count(2)
    assert A[0] == 1
    assert A[1] == phi1
    assert A[2] == phi2 + phi1 * (phi1 + 1) // 2
    # beyond degree 2g-2 the counts follow the residue formula
    for n in range(2 * z.g - 1, 5):
        assert A[n] == z.h * (z.q ** (n - z.g + 1) - 1) // (z.q - 1)


def test_effective_divisor_counts_match_series_expansion():
    # A_n is the T^n coefficient of P(T)/((1-T)(1-qT))
    z = oracle_genus2()
    n_max = 10
    a = list(z.a) + [0] * (n_max + 1 - len(z.a))
    series = []
    for n in range(n_max + 1):
        series.append(
            sum(a[i] * (z.q ** (n - i + 1) - 1) // (z.q - 1) for i in range(n + 1))
        )
    assert z.effective_divisor_counts(n_max) == series


def test_kappa_identity_exact():
    for z in (oracle_elliptic(), oracle_genus2(), oracle_genus0()):
        expected = Fraction(z.h * z.q, z.q**z.g * (z.q - 1))
        assert z.kappa_log_q() == expected
        # kappa * log q re-encloses the exact rational
        assert (z.kappa() * log_enclosure(z.q)).contains(expected)


def test_numerator_from_counts_roundtrip():
    rng = random.Random(3)
    for q in (2, 3, 4, 8):
        z = random_synthetic(rng, q, 6)
        counts = {n: z.point_count(n) for n in range(1, 7)}
        rebuilt = numerator_from_counts(q, 6, counts)
        assert rebuilt.a == z.a
        assert rebuilt.h == z.h


def test_numerator_from_counts_accepts_sequences():
    z = numerator_from_counts(2, 2, [3, 5])
    assert z.a == (1, 0, 0, 0, 4)


def test_numerator_from_counts_rejects_bad_data():
    with pytest.raises(ProfileError):
        numerator_from_counts(2, 2, {1: 3})  # degree 2 missing
    with pytest.raises(NonIntegralCoefficient):
        numerator_from_counts(2, 2, {1: 3, 2: 6})
    with pytest.raises(ProfileError):
        numerator_from_counts(2, -1, {})


def test_synthesize_class_number_product_identity():
    rng = random.Random(5)
    for q in (2, 3, 4, 5, 8, 9):
        limit = math.isqrt(4 * q)
        traces = [rng.randint(-limit, limit) for _ in range(6)]
        z = synthesize(q, traces)
        assert z.g == 6
        assert z.h == math.prod(q + 1 - t for t in traces)
        assert z.point_count(1) == q + 1 - sum(traces)


def test_synthesize_trace_validation():
    with pytest.raises(TraceOutOfRange):
        synthesize(2, [3])  # isqrt(8) = 2
    with pytest.raises(TraceOutOfRange):
        synthesize(2, [Fraction(1, 2)])
    assert synthesize(4, []).h == 1


def test_eps3_exact_within_a_priori_bound():
    from jacobound.explicit_bounds import eps3_abs_bound

    for z in (oracle_elliptic(), oracle_genus2()):
        for n in (1, 2, 5, 10, 20, 40, 60):
            tail = eps3_exact(z, n)
            cap = eps3_abs_bound(z.q, z.g, n)
            assert abs(tail.hi_fraction()) <= cap.hi_fraction()
            assert abs(tail.lo_fraction()) <= cap.hi_fraction()
    values = [
        abs(float(eps3_exact(oracle_genus2(), n).midpoint())) for n in (5, 10, 20, 40)
    ]
    assert values == sorted(values, reverse=True)
    with pytest.raises(InvalidN):
        eps3_exact(oracle_genus2(), 0)
    with pytest.raises(InvalidN):
        oracle_genus2().point_count(0)


def test_count_elliptic_known_curve_and_hasse():
    # y^2 = x^3 + x + 1 over F_5: direct enumeration
    points = 1
    for x in range(5):
        rhs = (x**3 + x + 1) % 5
        points += sum(1 for y in range(5) if (y * y) % 5 == rhs)
    assert count_elliptic(5, 1, 1) == points
    for p in (3, 5, 7, 11, 13):
        for (a, b) in ((1, 1), (2, 3), (0, 1)):
            try:
                n = count_elliptic(p, a, b)
            except SingularCurve:
                continue
            assert abs(p + 1 - n) <= 2 * math.isqrt(p * 4) / 2 + 1
            # the count must define a valid genus-1 numerator
            assert numerator_from_counts(p, 1, {1: n}).h > 0


def test_count_elliptic_rejects_bad_fields_and_singular():
    with pytest.raises(NonPrimeField):
        count_elliptic(9, 1, 1)
    with pytest.raises(NonPrimeField):
        count_elliptic(4, 1, 1)
    with pytest.raises(SingularCurve):
        count_elliptic(5, 0, 0)
