import math
import random
from fractions import Fraction

import pytest

from chainlab import (
    TruncatedSeries,
    add_root,
    bivariate_check,
    bivariate_level_slices,
    counts_to_series,
    geometric_series,
    level_count_total,
    level_series,
    level_series_closed_form,
    pointer_add,
    pointer_remove,
    series_to_counts,
)

ORDER = 12


def test_counts_conversion_chain_counts():
    # counts (n!)^(k-1) under the (k-1)-exponential convention give 1/(1-z)
    for k in (2, 3, 4):
        counts = [math.factorial(n) ** (k - 1) for n in range(ORDER + 1)]
        assert counts_to_series(counts, k - 1) == geometric_series(ORDER)


def test_counts_conversion_identity_and_round_trip():
    rng = random.Random(5)
    counts = tuple(rng.randrange(0, 10 ** 6) for _ in range(ORDER + 1))
    assert counts_to_series(counts, 0).coeffs == tuple(Fraction(c) for c in counts)
    for d in (0, 1, 3):
        assert series_to_counts(counts_to_series(counts, d), d) == counts


def test_counts_conversion_rejects_non_integer():
    series = TruncatedSeries((1, Fraction(1, 3)))
    with pytest.raises(ValueError, match="coefficient 1"):
        series_to_counts(series, 1)


def test_elementary_ops():
    one = TruncatedSeries.one(ORDER)
    ones = geometric_series(ORDER)
    assert one.geom_divide() == ones
    z = TruncatedSeries((0, 1) + (0,) * (ORDER - 1))
    assert z.exp().coeffs == tuple(Fraction(1, math.factorial(n)) for n in range(ORDER + 1))
    one_minus_z = TruncatedSeries((1, -1) + (0,) * (ORDER - 1))
    assert ones * one_minus_z == TruncatedSeries.one(ORDER)
    assert ones.differentiate().coeffs == tuple(Fraction(n + 1) for n in range(ORDER))
    assert z.integrate().coeffs[2] == Fraction(1, 2)
    with pytest.raises(ValueError, match="constant term"):
        ones.exp()


def test_add_root_fixed_point():
    # the all-ones series is the unique solution of F = 1 + zF
    ones = geometric_series(ORDER)
    assert (TruncatedSeries.one(ORDER + 1) + add_root(ones)).truncate(ORDER) == ones
    assert add_root(TruncatedSeries.one(3)).coeffs == (0, 1, 0, 0, 0)


def test_add_root_counts_view():
    # with k = 3: counts transform f'_{n+1} = (n+1)^2 f_n
    shifted = add_root(counts_to_series((1,), 2))
    assert series_to_counts(shifted, 2) == (0, 1)


def test_pointer_ops():
    rng = random.Random(11)
    series = TruncatedSeries((0,) + tuple(Fraction(rng.randrange(-9, 9), rng.randrange(1, 9))
                                          for _ in range(ORDER)))
    assert pointer_remove(pointer_add(series)) == series
    z = TruncatedSeries((0, 1, 0, 0))
    assert pointer_add(z) == z
    plus = pointer_add(geometric_series(ORDER))
    assert plus.coeffs == (1,) + tuple(Fraction(n) for n in range(1, ORDER + 1))


def test_level_series_base_case():
    assert level_series(1, 2, 8).coeffs == tuple(Fraction(n) for n in range(9))
    assert level_series(1, 5, 8) == level_series(1, 2, 8)  # level 1 ignores arity


def test_level_series_example_coefficient():
    series = level_series(2, 2, 8)
    assert series.coeffs[3] == Fraction(3, 2)  # count 6 * 3/2 = 9


def test_level_series_beyond_order_vanishes():
    assert level_series(9, 2, 8) == TruncatedSeries.zero(8)


def test_level_series_matches_closed_form():
    for k in (2, 3, 4):
        for level in range(1, 7):
            assert level_series(level, k, 30) == level_series_closed_form(level, k, 30)


def test_level_series_counts_are_level_totals():
    for k in (2, 3):
        for level in range(1, 6):
            counts = series_to_counts(level_series(level, k, 10), k - 1)
            assert counts == tuple(level_count_total(level, n, k) for n in range(11))


def test_bivariate_check():
    assert bivariate_check(2, 20)
    assert bivariate_check(4, 12)


def test_bivariate_q1_specialization():
    order = 14
    slices = bivariate_level_slices(2, order)
    summed = slices[0]
    for component in slices[1:]:
        summed = summed + component
    direct = TruncatedSeries.zero(order)
    for level in range(1, order + 1):
        direct = direct + level_series(level, 2, order)
    assert summed == direct
