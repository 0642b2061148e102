"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_backends.py [--quick]

For each workload both backends run the same call; the table reports the
best-of-N wall time and the speedup of the compiled kernel.
"""

import argparse
import sys
import timeit

from fastcollatz import _kernels
from fastcollatz.bench import suite_inputs

BUDGET = 10**7


def workloads(quick):
    scale = 10 if quick else 1
    small = suite_inputs("small_random", 2000 // scale, 0)
    primes = suite_inputs("primes", 500 // scale, 0)
    big = suite_inputs("large_random", 50 // scale, 0)
    return [
        ("fast, small_random", lambda k: [k.fast_counts(n, BUDGET) for n in small]),
        ("bitwise, small_random", lambda k: [k.bitwise_counts(n, BUDGET) for n in small]),
        ("fast, primes", lambda k: [k.fast_counts(n, BUDGET) for n in primes]),
        ("bitwise, primes", lambda k: [k.bitwise_counts(n, BUDGET) for n in primes]),
        ("fast, large_random", lambda k: [k.fast_counts(n, BUDGET) for n in big]),
        ("bitwise, large_random", lambda k: [k.bitwise_counts(n, BUDGET) for n in big]),
        ("fast, 2^10000-1", lambda k: k.fast_counts(2**10000 - 1, BUDGET)),
        ("bitwise, 2^10000-1", lambda k: k.bitwise_counts(2**10000 - 1, BUDGET)),
        ("iteration stats [2, 10^5 / scale]", lambda k: k.fast_iterations_aggregate(2, 10**5 // scale, BUDGET)),
        ("verify chunk [1, 10^5 / scale]", lambda k: k.verify_chunk(1, 10**5 // scale, BUDGET, 1, 1)),
    ]


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="smaller inputs, fewer repeats")
    args = parser.parse_args(argv)

    backends = _kernels.available()
    if "c" not in backends:
        print("compiled kernels are not built; only the pure-Python backend is available")
        return 1
    py, c = backends["python"], backends["c"]
    repeat = 3 if args.quick else 5

    print(f"{'workload':36s} {'python (s)':>12s} {'compiled (s)':>13s} {'speedup':>9s}")
    for label, work in workloads(args.quick):
        assert work(py) == work(c), label
        t_py = best_time(lambda: work(py), repeat)
        t_c = best_time(lambda: work(c), repeat)
        print(f"{label:36s} {t_py:12.5f} {t_c:13.5f} {t_py / t_c:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
