import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fastcollatz import (
    CollatzError,
    comparison_table,
    doubling_schedule,
    fit_two_point,
    improvement_percent,
    range_stats,
    stop_time_oracle,
)
from fastcollatz.analysis import comparison_row


def brute_stats(lo, hi):
    its = [stop_time_oracle(n).loop_iterations for n in range(lo, hi + 1)]
    return min(its), sum(its), max(its)


def test_range_stats_trivial():
    s = range_stats(2)
    assert (s.input_count, s.best, s.average, s.worst) == (2, 1, 1.0, 1)


def test_range_stats_1000_against_oracle():
    best, total, worst = brute_stats(2, 1000)
    s = range_stats(1000)
    assert (s.best, s.worst, s.total) == (best, worst, total)
    assert s.average == total / 999
    assert s.input_count == 1000


def test_range_stats_10000_table_row():
    s = range_stats(10000)
    assert (s.best, s.worst) == (1, 192)
    assert s.average == pytest.approx(56.90, abs=0.5)
    # The printed 56.90 is reproduced exactly by total / N.
    assert round(s.average_per_input, 2) == 56.90


def test_range_stats_rejects_small_limit():
    with pytest.raises(CollatzError):
        range_stats(1)


def test_range_stats_worker_invariance():
    assert range_stats(3000, workers=2) == range_stats(3000, workers=1)


def test_doubling_schedule_matches_independent_rows():
    rows = doubling_schedule(10000, 3)
    assert [r.input_count for r in rows] == [10000, 20000, 40000]
    for r in rows:
        assert r == range_stats(r.input_count)
    # first row by brute force
    best, total, worst = brute_stats(2, 10000)
    assert (rows[0].best, rows[0].total, rows[0].worst) == (best, total, worst)


def test_doubling_schedule_trivial():
    rows = doubling_schedule(2, 1)
    assert len(rows) == 1 and rows[0].worst == 1


def test_doubling_schedule_monotone():
    rows = doubling_schedule(1000, 8)
    for a, b in zip(rows, rows[1:]):
        assert a.average <= b.average
        assert a.worst <= b.worst
        assert a.best <= a.average <= a.worst


def _solve(p1, p2):
    A = np.array([[math.log2(p1[0]), 1.0], [math.log2(p2[0]), 1.0]])
    return np.linalg.solve(A, np.array([p1[1], p2[1]]))


@pytest.mark.parametrize(
    "p1, p2",
    [((10000, 56.90), (5120000, 98.93)), ((10000, 192), (5120000, 444)), ((3, 1.5), (1e9, -7.0))],
)
def test_fit_matches_linear_solve(p1, p2):
    fit = fit_two_point(p1, p2)
    a, b = _solve(p1, p2)
    assert fit.a == pytest.approx(a, rel=1e-12)
    assert fit.b == pytest.approx(b, rel=1e-12)
    for n, f in (p1, p2):
        assert fit(n) == pytest.approx(f, rel=1e-9)


def test_fit_worst_case_values():
    fit = fit_two_point((10000, 192), (5120000, 444))
    assert fit.a == pytest.approx(28.00, abs=0.005)
    assert fit.b == pytest.approx(-180.17, abs=0.5)


def test_fit_average_case_with_exact_logs():
    # log2(5120000 / 10000) is exactly 9, so a = 42.03 / 9.
    fit = fit_two_point((10000, 56.90), (5120000, 98.93))
    assert fit.a == pytest.approx(42.03 / 9)
    assert fit.b == pytest.approx(56.90 - 42.03 / 9 * math.log2(10000))


def test_published_average_fit_uses_a_misprinted_log():
    # The published coefficients follow from log2(5,120,000) ~ 22.3181,
    # whereas the true value is 22.2877.
    assert math.log2(5120000) == pytest.approx(22.2877, abs=1e-4)
    a = (98.93 - 56.90) / (22.3181 - 13.2877)
    assert a == pytest.approx(4.65, abs=0.01)


def test_fit_flat():
    fit = fit_two_point((2, 3.5), (4, 3.5))
    assert (fit.a, fit.b) == (0, 3.5)


def test_fit_rejects_equal_abscissae():
    with pytest.raises(CollatzError):
        fit_two_point((10, 1), (10, 2))


def test_improvement_examples():
    assert round(improvement_percent(1056, 1465), 2) == pytest.approx(27.91, abs=0.03)
    assert improvement_percent(5, 5) == 0.0
    value = improvement_percent(963206, 1344926)
    assert value == pytest.approx(float((1 - Fraction(963206, 1344926)) * 100), rel=1e-14)
    assert round(value, 2) == 28.38


def test_improvement_rejects_zero():
    with pytest.raises(CollatzError):
        improvement_percent(1, 0)


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_improvement_bounds(p, b):
    if p <= b:
        assert 0 <= improvement_percent(p, b) < 100


def test_comparison_row_100():
    row = comparison_row(100)
    assert (row.stopping_time, row.iters_ren, row.iters_bitwise, row.iters_proposed) == (1465, 1465, 1465, 1056)
    assert row.sequence_length == 1466
    assert round(row.impr_bitwise, 2) == pytest.approx(27.91, abs=0.03)


def test_comparison_row_500():
    row = comparison_row(500)
    assert (row.stopping_time, row.iters_proposed) == (6748, 4834)


def test_comparison_row_3():
    # 3, 10, 5, 16, 8, 4, 2, 1
    row = comparison_row(2)
    assert row.sequence_length == 8
    assert row.stopping_time == 7
    assert row.iters_proposed == stop_time_oracle(3).loop_iterations == 4


def test_comparison_table_laws():
    for row in comparison_table([2, 3, 10, 64, 100]):
        assert row.iters_bitwise == row.stopping_time == row.iters_ren
        assert row.iters_proposed < row.stopping_time


def test_comparison_skip_baseline_equal():
    assert comparison_table([100, 500], run_baseline=False) == comparison_table([100, 500])


def test_comparison_rejects_small_exponent():
    with pytest.raises(CollatzError):
        comparison_row(1)
