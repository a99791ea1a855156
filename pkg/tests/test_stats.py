import math
from fractions import Fraction

import mpmath
import pytest

from chainlab import (
    chain_count,
    decompressed_size,
    enumerate_chains,
    expected_size_asymptotic,
    expected_size_exact,
    expected_size_value,
    fuss_catalan,
    laguerre_check,
    laguerre_polynomial,
    level_count_total,
    level_moments,
    total_decompressed_nodes,
)


@pytest.mark.parametrize("n,k,expected", [(3, 2, 6), (2, 3, 4), (0, 2, 1), (0, 5, 1)])
def test_chain_count(n, k, expected):
    assert chain_count(n, k) == expected


def test_level_count_spine():
    # level 1 counts the n spine nodes of every chain
    for k in (2, 3, 4):
        for n in range(1, 8):
            assert level_count_total(1, n, k) == n * chain_count(n, k)
    assert [level_count_total(1, n, 2) for n in range(1, 6)] == [1, 4, 18, 96, 600]


def test_level_count_examples():
    assert level_count_total(2, 2, 2) == 1
    assert level_count_total(1, 2, 3) == 8
    assert level_count_total(2, 2, 3) == 4
    assert level_count_total(5, 3, 2) == 0  # level beyond n
    with pytest.raises(ValueError):
        level_count_total(0, 3, 2)


def test_level_count_top_level():
    for k in (2, 3):
        for n in range(1, 9):
            expected = chain_count(n, k) * (k - 1) ** (n - 1) // math.factorial(n)
            assert level_count_total(n, n, k) == expected


def test_totals_printed_series():
    assert [total_decompressed_nodes(n, 2) for n in range(1, 7)] == [1, 5, 28, 185, 1426, 12607]


def test_totals_against_brute_force():
    assert total_decompressed_nodes(2, 2) == sum(
        decompressed_size(c) for c in enumerate_chains(2, 2)) == 5
    assert total_decompressed_nodes(2, 3) == sum(
        decompressed_size(c) for c in enumerate_chains(3, 2)) == 12


@pytest.mark.parametrize("n,k,expected", [
    (2, 2, Fraction(5, 2)),
    (3, 2, Fraction(14, 3)),  # 28 / 3!
    (2, 3, Fraction(3)),
    (0, 2, Fraction(0)),
])
def test_expected_size_exact(n, k, expected):
    assert expected_size_exact(n, k) == expected


def test_total_equals_count_times_expectation():
    for k in (2, 3, 4):
        for n in range(31):
            assert (Fraction(total_decompressed_nodes(n, k))
                    == chain_count(n, k) * expected_size_exact(n, k))


def test_expected_size_value_matches_exact():
    exact = expected_size_exact(100, 2)
    with mpmath.workprec(220):
        reference = mpmath.mpf(exact.numerator) / exact.denominator
        assert abs(expected_size_value(100, 2) - reference) <= reference * mpmath.mpf(2) ** -150


def test_asymptotic_binary_prefactor():
    # for k = 2 the formula reduces to e^(2 sqrt(n)) / (2 sqrt(e pi) n^(1/4))
    with mpmath.workprec(200):
        for n in (10, 1000):
            direct = (mpmath.exp(2 * mpmath.sqrt(n))
                      / (2 * mpmath.sqrt(mpmath.e * mpmath.pi) * mpmath.mpf(n) ** Fraction(1, 4)))
            assert abs(expected_size_asymptotic(n, 2) / direct - 1) < mpmath.mpf(2) ** -180


def test_asymptotic_ratio_strictly_improves():
    for k in (2, 3):
        deviations = []
        for n in (100, 1000, 10000):
            ratio = expected_size_value(n, k) / expected_size_asymptotic(n, k)
            deviations.append(abs(ratio - 1))
        assert deviations[0] > deviations[1] > deviations[2]
        assert deviations[2] < 0.05


def test_level_moments_examples():
    assert level_moments(2, 2) == (Fraction(6, 5), Fraction(4, 25))
    for k in (2, 3, 7):
        assert level_moments(1, k) == (Fraction(1), Fraction(0))


def test_level_moments_against_direct_sum():
    for n, k in ((5, 2), (9, 3), (20, 2)):
        weights = [level_count_total(level, n, k) for level in range(1, n + 1)]
        total = sum(weights)
        mean = Fraction(sum((l + 1) * w for l, w in enumerate(weights)), total)
        var = Fraction(sum((l + 1) ** 2 * w for l, w in enumerate(weights)), total) - mean ** 2
        assert level_moments(n, k) == (mean, var)


def test_laguerre_small():
    assert laguerre_polynomial(0) == (1,)
    assert laguerre_polynomial(1) == (1, -1)
    assert laguerre_polynomial(2) == (1, -2, Fraction(1, 2))
    # 2!(L_2(-q) - 1) = 4q + q^2, matching the level counts 4 and 1
    assert level_count_total(1, 2, 2) == 4 and level_count_total(2, 2, 2) == 1
    assert laguerre_check(1) and laguerre_check(2)


def test_laguerre_identity_range():
    assert all(laguerre_check(n) for n in range(1, 16))
    with pytest.raises(ValueError):
        laguerre_check(3, k=3)


@pytest.mark.parametrize("n,k,expected", [(6, 2, 132), (0, 2, 1), (0, 7, 1), (2, 3, 3)])
def test_fuss_catalan(n, k, expected):
    assert fuss_catalan(n, k) == expected
