"""Range statistics, logarithmic fits and improvement percentages."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _kernels
from .core import DEFAULT_BUDGET, stop_time_bitwise, stop_time_fast
from .errors import CollatzError


@dataclass(frozen=True)
class RangeStats:
    """Best/average/worst fast-algorithm loop iterations over ``[2, input_count]``.

    ``total`` is the exact integer sum the average is derived from.
    """

    input_count: int
    best: int
    average: float
    worst: int
    total: int

    @property
    def average_per_input(self) -> float:
        """``total / input_count``: the mean if ``n = 1`` (0 iterations) is included."""
        return self.total / self.input_count


@dataclass(frozen=True)
class LinearLogFit:
    """``f(n) = a * log2(n) + b``."""

    a: float
    b: float

    def __call__(self, n: float) -> float:
        return self.a * math.log2(n) + self.b


def _segment(args):
    lo, hi, budget = args
    return _kernels.fast_iterations_aggregate(lo, hi, budget)


def _aggregate(segments, budget, workers):
    """Per-segment ``(count, total, best, worst)`` in segment order."""
    jobs = [(lo, hi, budget) for lo, hi in segments]
    if workers <= 1 or len(segments) == 1:
        return [_segment(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_segment, jobs))


def _split(lo, hi, pieces):
    size = max(1, -(-(hi - lo + 1) // pieces))
    return [(a, min(hi, a + size - 1)) for a in range(lo, hi + 1, size)]


def _merge(parts):
    count = total = 0
    best = worst = None
    for c, t, b, w in parts:
        if not c:
            continue
        count += c
        total += t
        best = b if best is None else min(best, b)
        worst = w if worst is None else max(worst, w)
    return count, total, best, worst


def _stats(limit, count, total, best, worst):
    return RangeStats(input_count=limit, best=best, average=total / count, worst=worst, total=total)


def range_stats(limit: int, workers: int = 1, budget: int = DEFAULT_BUDGET) -> RangeStats:
    if limit < 2:
        raise CollatzError(f"range_stats needs limit >= 2, got {limit}")
    pieces = workers * 4 if workers > 1 else 1
    count, total, best, worst = _merge(_aggregate(_split(2, limit, pieces), budget, workers))
    return _stats(limit, count, total, best, worst)


def doubling_schedule(
    start: int, steps: int, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> list[RangeStats]:
    """Range statistics at ``start, 2*start, ..., start * 2**(steps - 1)``.

    Each row reuses the aggregate of the previous one, so the whole
    schedule costs one pass over ``[2, start * 2**(steps - 1)]``.
    """
    if start < 2 or steps < 1:
        raise CollatzError("doubling_schedule needs start >= 2 and steps >= 1")
    limits = [start << i for i in range(steps)]
    bounds = [(2, limits[0])] + [(limits[i - 1] + 1, limits[i]) for i in range(1, steps)]
    pieces = workers * 4 if workers > 1 else 1
    segments = []
    owners = []
    for row, (lo, hi) in enumerate(bounds):
        for seg in _split(lo, hi, pieces):
            segments.append(seg)
            owners.append(row)
    parts = _aggregate(segments, budget, workers)
    out = []
    running = (0, 0, None, None)
    for row, limit in enumerate(limits):
        running = _merge([running] + [p for p, o in zip(parts, owners) if o == row])
        out.append(_stats(limit, *running))
    return out


def fit_two_point(p1: tuple[float, float], p2: tuple[float, float]) -> LinearLogFit:
    """Line through two points in ``(log2(n), f)`` coordinates."""
    (n1, f1), (n2, f2) = p1, p2
    if n1 <= 1 or n2 <= 1:
        raise CollatzError("fit abscissae must be > 1")
    if n1 == n2:
        raise CollatzError("fit needs two distinct abscissae")
    a = (f2 - f1) / (math.log2(n2) - math.log2(n1))
    return LinearLogFit(a=a, b=f1 - a * math.log2(n1))


def improvement_percent(proposed: int, benchmark: int) -> float:
    if benchmark == 0:
        raise CollatzError("benchmark iteration count must be positive")
    return (1 - proposed / benchmark) * 100


@dataclass(frozen=True)
class ComparisonRow:
    """One row of the iteration comparison for ``2**e - 1``.

    ``stopping_time`` holds the step count, which is how the published
    comparison table reports it; ``sequence_length`` is the terms-inclusive
    value returned by :func:`~fastcollatz.core.stop_time_fast`.
    """

    input_label: str
    exponent: int
    stopping_time: int
    sequence_length: int
    iters_ren: int
    iters_bitwise: int
    iters_proposed: int
    impr_ren: float
    impr_bitwise: float

    def as_dict(self) -> dict:
        return {
            "input_label": self.input_label,
            "stopping_time": self.stopping_time,
            "sequence_length": self.sequence_length,
            "iters_ren": self.iters_ren,
            "iters_bitwise": self.iters_bitwise,
            "iters_proposed": self.iters_proposed,
            "impr_ren": self.impr_ren,
            "impr_bitwise": self.impr_bitwise,
        }


COMPARISON_FIELDS = (
    "input_label",
    "stopping_time",
    "sequence_length",
    "iters_ren",
    "iters_bitwise",
    "iters_proposed",
    "impr_ren",
    "impr_bitwise",
)


def comparison_row(exponent: int, run_baseline: bool = True, budget: int = DEFAULT_BUDGET) -> ComparisonRow:
    if exponent < 2:
        raise CollatzError(f"exponent must be >= 2, got {exponent}")
    n = (1 << exponent) - 1
    fast = stop_time_fast(n, budget)
    # The encoding baseline costs one unit per 3x+1 and per halving: U + D.
    ren = fast.odd_steps + fast.division_steps
    if run_baseline:
        bitwise = stop_time_bitwise(n, budget).loop_iterations
    else:
        bitwise = fast.steps
    return ComparisonRow(
        input_label=f"2^{exponent}-1",
        exponent=exponent,
        stopping_time=fast.steps,
        sequence_length=fast.stopping_time,
        iters_ren=ren,
        iters_bitwise=bitwise,
        iters_proposed=fast.loop_iterations,
        impr_ren=improvement_percent(fast.loop_iterations, ren),
        impr_bitwise=improvement_percent(fast.loop_iterations, bitwise),
    )


def comparison_table(exponents, run_baseline: bool = True, budget: int = DEFAULT_BUDGET) -> list[ComparisonRow]:
    return [comparison_row(e, run_baseline, budget) for e in exponents]
