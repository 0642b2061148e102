"""Timing harness comparing the fast algorithm with the bitwise baseline.

Every input is timed with both algorithms on the same kernel backend.  A
record's ``wall_time`` is the median per-call time over ``repetitions``
batches, each batch long enough to sit well above timer resolution.
"""

from __future__ import annotations

import random
import statistics
import timeit
from dataclasses import dataclass

from . import _kernels
from .core import DEFAULT_BUDGET

SUITES = ("small_random", "large_random", "powers_of_two", "multiples_of_three", "primes")
ALGORITHMS = ("proposed", "bitwise")
BENCH_FIELDS = ("label", "input", "algorithm", "wall_time", "loop_iterations", "repetitions")

MIN_BATCH_SECONDS = 2e-4

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class BenchRecord:
    label: str
    input: int
    algorithm: str
    wall_time: float
    loop_iterations: int
    repetitions: int

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in BENCH_FIELDS}


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases; exact below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def suite_inputs(suite: str, count: int, seed: int) -> list[int]:
    """Deterministic input list for ``suite``; same seed, same list."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(f"{suite}:{seed}")
    if suite == "small_random":
        return [rng.randrange(2, 10**6) for _ in range(count)]
    if suite == "large_random":
        return [rng.getrandbits(rng.randrange(128, 1025)) | 1 << 127 for _ in range(count)]
    if suite == "powers_of_two":
        return [1 << rng.randrange(1, 1025) for _ in range(count)]
    if suite == "multiples_of_three":
        return [3 * rng.randrange(1, 10**12) for _ in range(count)]
    primes = []
    while len(primes) < count:
        candidate = rng.randrange(2**32, 2**64) | 1
        if is_probable_prime(candidate):
            primes.append(candidate)
    return primes


def _time_call(fn, n, repetitions):
    fn(n, DEFAULT_BUDGET)  # warm-up
    once = timeit.timeit(lambda: fn(n, DEFAULT_BUDGET), number=1)
    number = max(1, int(MIN_BATCH_SECONDS / max(once, 1e-9)))
    batches = timeit.repeat(lambda: fn(n, DEFAULT_BUDGET), number=number, repeat=repetitions)
    return statistics.median(batches) / number


def run_bench(
    suite: str,
    count: int,
    seed: int = 0,
    repetitions: int = 5,
    kernels=None,
) -> list[BenchRecord]:
    """Time both algorithms on every input of ``suite``.

    ``kernels`` picks the backend module (default: the active one).
    """
    if repetitions < 3:
        raise ValueError("repetitions must be >= 3")
    kernels = kernels or _kernels.active
    algorithms = {"proposed": kernels.fast_counts, "bitwise": kernels.bitwise_counts}
    records = []
    for n in suite_inputs(suite, count, seed):
        for name, fn in algorithms.items():
            iterations = fn(n, DEFAULT_BUDGET)[1]
            records.append(
                BenchRecord(suite, n, name, _time_call(fn, n, repetitions), iterations, repetitions)
            )
    return records


def summarize(records: list[BenchRecord]) -> dict[str, float]:
    """Median wall time per algorithm."""
    return {
        name: statistics.median(r.wall_time for r in records if r.algorithm == name)
        for name in ALGORITHMS
        if any(r.algorithm == name for r in records)
    }
