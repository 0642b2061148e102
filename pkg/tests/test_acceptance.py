"""Exit criteria for the package, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import functools
import os

import pytest

from conftest import ACCEPTANCE_RESULTS
from fastcollatz import (
    code_length_law,
    encode,
    fit_two_point,
    range_stats,
    stop_time_bitwise,
    stop_time_fast,
    stop_time_oracle,
    verify_range,
    verify_window,
)
from fastcollatz.analysis import comparison_row
from fastcollatz.bench import SUITES, run_bench, summarize
from fastcollatz.tree import children, generate

PCT_TOL = 0.03 + 1e-9  # inclusive bound on 2-d.p. values


def criterion(key, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            ACCEPTANCE_RESULTS[key] = (title, False)
            fn(*args, **kwargs)
            ACCEPTANCE_RESULTS[key] = (title, True)

        return run

    return wrap


TABLE2 = {
    100: (1465, 1056, 27.91),
    500: (6748, 4834, 28.35),
    1000: (12157, 8632, 29.00),
    5000: (67378, 48262, 28.37),
    10000: (134404, 96252, 28.36),
}
TABLE2_LONG = {50000: (667858, 478040, 28.40), 100000: (1344926, 963206, 28.36)}


def _check_table2_rows(rows):
    for e, (stopping, proposed, pct) in rows.items():
        row = comparison_row(e)
        assert row.stopping_time == stopping, e
        assert row.iters_bitwise == row.iters_ren == stopping, e
        assert row.iters_proposed == proposed, e
        assert abs(round(row.impr_bitwise, 2) - pct) <= PCT_TOL, (e, row.impr_bitwise)
        assert abs(round(row.impr_ren, 2) - pct) <= PCT_TOL, (e, row.impr_ren)


@criterion("01", "Table 2 rows 2^e-1, e in {100, 500, 1000, 5000, 10000}")
def test_c01_table2():
    _check_table2_rows(TABLE2)


@pytest.mark.slow
@criterion("01L", "Table 2 long rows e in {50000, 100000}")
def test_c01_table2_long():
    _check_table2_rows(TABLE2_LONG)


@criterion("02", "walkthrough: 20480 -> 18 in 3 iterations, 48 in 5, 7 -> 17")
def test_c02_walkthrough():
    r = stop_time_fast(20480)
    assert (r.stopping_time, r.loop_iterations) == (18, 3)
    assert stop_time_fast(48).loop_iterations == 5
    assert stop_time_fast(7).stopping_time == 17


@criterion("03", "fast, bitwise and oracle agree on [1, 10^6]")
def test_c03_oracle_equivalence():
    mismatches = []
    for n in range(1, 10**6 + 1):
        expected = stop_time_oracle(n).stopping_time
        if stop_time_fast(n).stopping_time != expected or stop_time_bitwise(n).stopping_time != expected:
            mismatches.append(n)
    assert mismatches == []


@criterion("04", "Table 1 anchors at 10,000 and 5,120,000")
def test_c04_table1_anchors():
    small = range_stats(10000)
    assert (small.best, small.worst) == (1, 192)
    assert abs(small.average - 56.90) <= 0.5
    large = range_stats(5120000, workers=os.cpu_count() or 1)
    assert large.worst == 444
    assert abs(large.average - 98.93) <= 0.5


@criterion("05a", "average-case fit a = 4.65 +/- 0.01, b = -4.91 +/- 0.05")
def test_c05a_average_fit():
    fit = fit_two_point((10000, 56.90), (5120000, 98.93))
    assert abs(fit.a - 4.65) <= 0.01, fit
    assert abs(fit.b - -4.91) <= 0.05, fit


@criterion("05b", "worst-case fit a = 28.00 +/- 0.05, b = -180.17 +/- 0.5")
def test_c05b_worst_fit():
    fit = fit_two_point((10000, 192), (5120000, 444))
    assert abs(fit.a - 28.00) <= 0.05, fit
    assert abs(fit.b - -180.17) <= 0.5, fit


@criterion("06a", "code words: 7 -> '---0-00-000', |w(63)| = 68, length law on [1, 10^4]")
def test_c06a_codewords():
    w7 = encode(7)
    assert str(w7) == "---0-00-000"
    assert (w7.odd_groups, w7.extra_divisions, len(w7)) == (5, 6, 11)
    assert len(encode(63)) == 68
    for n in range(1, 10**4 + 1):
        assert len(encode(n)) == code_length_law(stop_time_oracle(n)), n


@criterion("06b", "code word for 63 has U = 40, D-U = 28")
def test_c06b_codeword_63_counts():
    w63 = encode(63)
    assert (w63.odd_groups, w63.extra_divisions) == (40, 28), (w63.odd_groups, w63.extra_divisions)


@criterion("07", "branch points = {6k+10}, sterile subtrees never branch, 2^j in 1 iteration")
def test_c07_tree_structure():
    limit = 10**6
    assert {m for m in range(1, limit + 1) if len(children(m)) == 2} == set(range(10, limit + 1, 6))
    for s in range(3, 10**4 + 1, 6):
        assert all(len(node.children) < 2 for node, _ in generate(s, 10**7).walk()), s
    for j in range(1, 65):
        assert stop_time_fast(2**j).loop_iterations == 1


class _Stop(Exception):
    pass


@criterion("08", "verify_range(1, 10^4) identical across chunk sizes, workers, resume")
def test_c08_verification_determinism(tmp_path):
    reference = verify_range(1, 10**4, 4096)
    for chunk_size in (1, 7, 4096):
        assert verify_range(1, 10**4, chunk_size) == reference
    for workers in (1, 2, os.cpu_count() or 1):
        assert verify_range(1, 10**4, 64, workers=workers) == reference
    for stop_at in (0, 5, 77):
        path = tmp_path / f"ck{stop_at}.json"

        def interrupt(index, stop_at=stop_at):
            if index == stop_at:
                raise _Stop

        with pytest.raises(_Stop):
            verify_range(1, 10**4, 97, checkpoint=path, on_chunk=interrupt)
        assert verify_range(1, 10**4, 97, checkpoint=path) == reference


@criterion("09", "verify_window(10000, 1000): all finite, no budget incidents")
def test_c09_window_scan():
    report = verify_window(10000, 1000, workers=os.cpu_count() or 1)
    assert report.checked == 1001
    assert report.incidents == () and report.mismatches == ()
    assert report.ok and report.complete


@criterion("10", "median wall time proposed <= bitwise on all five suites (count 100)")
def test_c10_benchmark_direction():
    losing = {}
    for suite in SUITES:
        summary = summarize(run_bench(suite, 100, seed=2024))
        if summary["proposed"] > summary["bitwise"]:
            losing[suite] = summary
    assert losing == {}
