"""Directed-rounding enclosure arithmetic."""

from __future__ import annotations

import random
from decimal import Decimal
from fractions import Fraction

import pytest

from jacobound import DEFAULT_PRECISION, Enclosure, PrecisionError
from jacobound.rounding import (
    ceil_lo,
    decimal_str,
    floor_hi,
    fraction_to_sig_decimal,
    log_enclosure,
    render_adaptive,
    render_significant,
    sqrt_enclosure,
)


def enc(value, precision=DEFAULT_PRECISION) -> Enclosure:
    return Enclosure.exact(value, precision)


def test_exact_integer_has_zero_width():
    e = enc(7)
    assert e.lo_fraction() == e.hi_fraction() == 7
    assert e.contains(Fraction(7))


def test_exact_fraction_is_outward_rounded():
    third = Fraction(1, 3)
    e = enc(third)
    assert e.lo_fraction() <= third <= e.hi_fraction()
    assert e.lo_fraction() < e.hi_fraction()  # 1/3 is not a binary fraction
    assert e.hi_fraction() - e.lo_fraction() < Fraction(1, 2**250)


def test_negation_is_exact_at_operand_precision():
    # Regression: negation used to run in the ambient 53-bit context and
    # silently rounded high-precision endpoints.
    third = Fraction(1, 3)
    e = enc(third)
    n = -e
    assert n.lo_fraction() == -e.hi_fraction()
    assert n.hi_fraction() == -e.lo_fraction()
    assert n.contains(-third)
    # double negation is the identity on endpoints
    back = -n
    assert back.lo_fraction() == e.lo_fraction()
    assert back.hi_fraction() == e.hi_fraction()


def test_subtraction_of_self_contains_zero_with_tiny_width():
    e = enc(Fraction(22, 7))
    d = e - e
    assert d.contains(Fraction(0))
    assert d.hi_fraction() - d.lo_fraction() < Fraction(1, 2**250)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_arithmetic_containment_randomized(seed):
    rng = random.Random(seed)
    for _ in range(200):
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        ea, eb = enc(a), enc(b)
        assert (ea + eb).contains(a + b)
        assert (ea - eb).contains(a - b)
        assert (ea * eb).contains(a * b)
        if b != 0:
            assert (ea / eb).contains(a / b)


def test_multiplication_sign_cases():
    cases = [(-3, 2), (-5, -1), (1, 4), (-2, -2)]
    for (alo, ahi) in cases:
        for (blo, bhi) in cases:
            a = Enclosure.from_endpoints(Fraction(alo), Fraction(ahi))
            b = Enclosure.from_endpoints(Fraction(blo), Fraction(bhi))
            prod = a * b
            for x in (Fraction(alo), Fraction(ahi)):
                for y in (Fraction(blo), Fraction(bhi)):
                    assert prod.contains(x * y)


def test_pow_int_matches_exact_powers():
    e = enc(Fraction(3, 2))
    assert e.pow_int(0).contains(Fraction(1))
    assert e.pow_int(3).contains(Fraction(27, 8))
    assert e.pow_int(-2).contains(Fraction(4, 9))


def test_pow_int_even_power_of_signed_interval_is_nonnegative():
    e = Enclosure.from_endpoints(Fraction(-2), Fraction(1))
    with pytest.raises(ValueError):
        e.pow_int(2)


def test_scalar_coercion_accepts_int_and_fraction_only():
    e = enc(2)
    assert (e + 1).contains(Fraction(3))
    assert (e * Fraction(1, 2)).contains(Fraction(1))
    with pytest.raises(TypeError):
        e + 0.5  # floats are ambiguous inputs and are rejected


def test_log_exp_roundtrip_contains_input():
    for value in (Fraction(2), Fraction(10, 3), Fraction(1, 7)):
        e = enc(value)
        assert e.log().exp().contains(value)


def test_log_enclosure_of_one_contains_zero():
    assert log_enclosure(1, DEFAULT_PRECISION).contains(Fraction(0))


def test_sqrt_square_contains_input():
    for value in (2, 3, 5, Fraction(7, 2)):
        root = sqrt_enclosure(value, DEFAULT_PRECISION)
        assert (root * root).contains(Fraction(value))
        assert root.lo_fraction() > 0


def test_sqrt_of_square_is_exact():
    root = sqrt_enclosure(49, DEFAULT_PRECISION)
    assert root.lo_fraction() == root.hi_fraction() == 7


def test_contains_uses_exact_endpoints():
    e = Enclosure.from_endpoints(Fraction(1, 3), Fraction(2, 3))
    assert e.contains(Fraction(1, 2))
    assert not e.contains(Fraction(3, 4))
    # from_endpoints rounds outward, so binary-unrepresentable endpoints
    # are still covered
    assert e.contains(Fraction(1, 3))
    assert e.contains(Fraction(2, 3))


def test_ceil_lo_floor_hi():
    e = Enclosure.from_endpoints(Fraction(5, 2), Fraction(7, 2))
    assert ceil_lo(e) == 3
    assert floor_hi(e) == 3
    exact = enc(4)
    assert ceil_lo(exact) == 4
    assert floor_hi(exact) == 4


def test_fraction_to_sig_decimal_half_even():
    assert fraction_to_sig_decimal(Fraction(125, 1000), 2) == Decimal("0.12")
    assert fraction_to_sig_decimal(Fraction(135, 1000), 2) == Decimal("0.14")
    assert fraction_to_sig_decimal(Fraction(123456), 3) == Decimal("1.23e5")
    assert fraction_to_sig_decimal(Fraction(0), 5) == Decimal(0)


def test_decimal_str_lowercase_exponent():
    assert decimal_str(Decimal("1.23E+5")) == "1.23e+5"
    assert decimal_str(Decimal("7434")) == "7434"


def test_render_significant_requires_agreeing_endpoints():
    tight = enc(Fraction(9230))
    assert render_significant(tight, 4) == "9230"
    wide = Enclosure.from_endpoints(Fraction(9229), Fraction(9231))
    assert render_significant(wide, 6) is None
    assert render_significant(wide, 1) == "9e+3"


def test_render_adaptive_narrows_with_precision():
    # An enclosure of log(2) narrows as precision grows, so high digit
    # counts become renderable after retries.
    text, final = render_adaptive(
        lambda p: log_enclosure(2, p), sig_digits=60, precision=64
    )
    assert text.startswith("0.693147180559945")
    assert final.width_fraction() < Fraction(1, 10**59)


def test_render_adaptive_raises_on_stubborn_width():
    wide = Enclosure.from_endpoints(Fraction(1), Fraction(2))
    with pytest.raises(PrecisionError):
        render_adaptive(lambda p: wide, sig_digits=3, precision=DEFAULT_PRECISION)


def test_midpoint_and_radius_cover_interval():
    e = Enclosure.from_endpoints(Fraction(1, 3), Fraction(1, 2))
    mid = float(e.midpoint())
    rad = float(e.radius())
    assert 1 / 3 < mid < 1 / 2
    assert rad * (1 + 1e-15) >= (1 / 2 - 1 / 3) / 2
