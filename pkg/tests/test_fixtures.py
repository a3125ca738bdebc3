"""Bundled reference corpus: printed-value parsing and the reproduction engine."""

from __future__ import annotations

from fractions import Fraction

import pytest

from jacobound.curve_data import validate_profile
from jacobound.fixtures import (
    FIXTURES,
    FixtureRow,
    fixture_profiles,
    printed_value,
    relative_deviation,
    reproduce,
    round_to_sig,
    truncate_to_sig,
    values_agree,
)


def test_printed_value_integer_form():
    pv = printed_value("7434")
    assert pv.value == 7434
    assert pv.is_integer
    assert pv.sig_digits == 4
    assert str(pv) == "7434"


def test_printed_value_scientific_form():
    pv = printed_value("1.43e25")
    assert not pv.is_integer
    assert pv.sig_digits == 3
    assert pv.value == Fraction(143, 100) * 10**25
    wide = printed_value("4.039e13")
    assert wide.sig_digits == 4
    assert printed_value("9E3").value == 9000
    assert printed_value("9E3").sig_digits == 1


def test_printed_value_rejects_nonpositive():
    for bad in ("0", "-3", "0e5"):
        with pytest.raises(ValueError):
            printed_value(bad)


def test_truncate_and_round_to_sig():
    x = Fraction(123456)
    assert truncate_to_sig(x, 3) == 123000
    assert round_to_sig(x, 3) == 123000
    y = Fraction(126832)
    assert truncate_to_sig(y, 3) == 126000
    assert round_to_sig(y, 3) == 127000
    # half-even at the boundary
    assert round_to_sig(Fraction(125), 2) == 120
    assert round_to_sig(Fraction(135), 2) == 140
    small = Fraction(123456, 10**10)  # 1.23456e-5
    assert truncate_to_sig(small, 2) == Fraction(12, 10**6)
    with pytest.raises(ValueError):
        truncate_to_sig(x, 0)


def test_relative_deviation_exact():
    assert relative_deviation(Fraction(101), Fraction(100)) == Fraction(1, 100)
    assert relative_deviation(Fraction(99), Fraction(100)) == Fraction(1, 100)
    with pytest.raises(ValueError):
        relative_deviation(Fraction(1), Fraction(0))


def test_values_agree_integer_policy():
    ref = printed_value("9230")
    assert values_agree(Fraction(9230), ref)
    assert values_agree(Fraction(92299, 10), ref)  # ceil hits it
    assert values_agree(Fraction(92301, 10), ref)  # floor hits it
    assert values_agree(Fraction(9231), ref)  # within 5e-4 relative
    assert not values_agree(Fraction(9240), ref)
    assert not values_agree(Fraction(9000), ref)


def test_values_agree_scientific_policy():
    ref = printed_value("1.43e25")
    assert values_agree(Fraction(143, 100) * 10**25, ref)
    # truncation to 3 digits hits the printed form
    assert values_agree(Fraction(14399, 10000) * 10**25, ref)
    # rounding to 3 digits hits the printed form
    assert values_agree(Fraction(14251, 10000) * 10**25, ref)
    assert not values_agree(Fraction(145, 100) * 10**25, ref)
    assert not values_agree(Fraction(2, 1) * 10**25, ref)


def test_corpus_shape_and_uniqueness():
    assert len(FIXTURES) == 25
    keys = {(row.series, row.step) for row in FIXTURES}
    assert len(keys) == 25
    for row in FIXTURES:
        assert row.name == f"{row.series} k={row.step}"
        assert row.expected_lz is not None
        assert row.expected_n >= 1 or row.expected_n is None


def test_corpus_profiles_validate():
    profiles = fixture_profiles()
    assert len(profiles) == len(FIXTURES)
    for profile in profiles:
        validate_profile(profile)
        assert profile.g >= 2


def test_corpus_reference_columns():
    with_brt = [r for r in FIXTURES if r.expected_brt is not None]
    with_ahl = [r for r in FIXTURES if r.expected_ahl is not None]
    assert len(with_brt) == 24
    assert len(with_ahl) == 3
    # every row carrying a divisor-variant reference also carries one for
    # the optimizer column
    assert set(id(r) for r in with_ahl) <= set(id(r) for r in with_brt)
    with_exact = [r for r in FIXTURES if r.exact_h is not None]
    assert len(with_exact) == 1
    assert with_exact[0].exact_h == 16200


def test_reproduce_subset_preserves_order_and_counts():
    subset = tuple(FIXTURES[i] for i in (3, 0, 5))
    result = reproduce(n_max=40, rows=subset)
    assert [r.row.name for r in result.rows] == [r.name for r in subset]
    summary = result.summary()
    assert summary["rows"] == 3
    assert summary["lz_total"] == 3
    line = result.summary_line()
    assert line.startswith("match counts: lz ")
    # shrinking n_max below the optimum turns matches off, not errors
    tiny = reproduce(n_max=1, rows=(FIXTURES[0],))
    assert tiny.rows[0].comparison("lz").matched in (True, False)


def test_reproduce_row_payload_is_serializable():
    result = reproduce(n_max=40, rows=(FIXTURES[0],))
    payload = result.to_dict()
    assert payload["rows"][0]["series"] == FIXTURES[0].series
    comparisons = payload["rows"][0]["comparisons"]
    assert any(c["bound"] == "lz" for c in comparisons)
    assert any(c["bound"] == "brt" for c in comparisons)
    import json

    json.dumps(payload)  # must be JSON-clean


def test_fixture_row_is_immutable():
    row = FIXTURES[0]
    with pytest.raises(AttributeError):
        row.q = 5
    assert isinstance(row, FixtureRow)
