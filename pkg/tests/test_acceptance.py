"""Acceptance suite: one test per release criterion, full scale, pinned tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to get one pass/fail line per
criterion; the same checks back `chainlab verify`.
"""

import time

import pytest

from chainlab import all_previous_chain, decompressed_size, verify


def _run(check, budget_seconds=None, **kwargs):
    started = time.perf_counter()
    record = check(**kwargs)
    elapsed = time.perf_counter() - started
    assert record["ok"], record["details"]
    if budget_seconds is not None:
        assert elapsed < budget_seconds, f"{record['id']} took {elapsed:.1f}s"
    print(f"criterion {record['id'][1:]} PASS ({record['name']}: {record['details']})")
    return record


def test_c01_printed_series():
    _run(verify.check_printed_series, budget_seconds=1)


def test_c02_level_counts_exhaustive():
    _run(verify.check_level_counts, budget_seconds=60,
         max_n_binary=7, max_n_ternary=5)


def test_c03_asymptotics():
    _run(verify.check_asymptotics, budget_seconds=10, precision=200)


def test_c04_series_engine():
    _run(verify.check_series_engine, budget_seconds=5,
         order=30, bivariate_order=20)


def test_c05_traversal_fibers():
    _run(verify.check_traversal_fibers, budget_seconds=120,
         max_n_binary=6, max_level_binary=4, max_n_ternary=4, max_level_ternary=3)


def test_c06_equidistribution():
    _run(verify.check_equidistribution, budget_seconds=30, max_n=7)


def test_c07_partial_permutations():
    _run(verify.check_partial_permutations, max_n=5)


def test_c08_counterexample():
    _run(verify.check_counterexample)


def test_c09_laguerre_identity():
    _run(verify.check_laguerre, max_n=40)


def test_c10_brauer_bridge():
    _run(verify.check_brauer_bridge, max_n=6)


def test_c11_chain_compressible_counts():
    _run(verify.check_compressible, budget_seconds=300, max_m=11)


def test_c12_extreme_sizes():
    _run(verify.check_extremes, max_n=20)


@pytest.mark.xfail(
    strict=True,
    reason="the all-previous ternary chain decompresses to the complete ternary "
           "tree with (3^n - 1)/2 internal nodes, so the k^n - 1 form of the "
           "maximum is exact only at k = 2 (e.g. n = 2 gives 4, not 8); "
           "see notes/decisions.md",
)
def test_c12_extreme_sizes_ternary_literal():
    for n in range(1, 21):
        assert decompressed_size(all_previous_chain(3, n)) == 3 ** n - 1


def test_c13_compressor_round_trips():
    _run(verify.check_compressor_round_trips,
         tree_size=6, samples=100, max_n=8)


def test_c14_level_moments():
    _run(verify.check_level_moments, budget_seconds=10)
