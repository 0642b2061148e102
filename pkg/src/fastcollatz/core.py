"""Stopping-time algorithms and their primitive steps.

Three routes compute the same quantity:

* :func:`stop_time_fast` strips whole runs of trailing zeros at once, so a
  loop iteration either climbs one branch (``3n + 1``) or descends a full
  branch to its odd root.
* :func:`stop_time_bitwise` is the one-step-per-iteration baseline written
  with shifts.
* :func:`stop_time_oracle` uses plain ``%``, ``//`` and ``*``; tests use it
  as ground truth.

Stopping times count sequence terms, both endpoints included, so
``stop_time_fast(20480).stopping_time == 18``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .errors import BudgetExceeded, CollatzError

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class StopReport:
    """Stopping time of one input plus exact instrumentation counters.

    ``odd_steps`` is U (number of ``3n + 1`` computations), ``division_steps``
    is D (number of halvings), ``odd_count`` counts odd terms including the
    final 1, and ``sub_branches`` is the number of odd terms above 1 the
    fast algorithm climbs out of.
    """

    input: int
    stopping_time: int
    loop_iterations: int
    odd_steps: int
    division_steps: int
    odd_count: int
    sub_branches: int

    @property
    def steps(self) -> int:
        """Number of Collatz steps, i.e. ``stopping_time - 1``."""
        return self.stopping_time - 1


def _check_natural(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise CollatzError(f"Collatz inputs must be >= 1, got {n}")
    return n


def _report(n: int, counts: tuple[int, int, int, int]) -> StopReport:
    steps, iterations, odd_steps, divisions = counts
    return StopReport(
        input=n,
        stopping_time=steps + 1,
        loop_iterations=iterations,
        odd_steps=odd_steps,
        division_steps=divisions,
        odd_count=odd_steps + 1,
        sub_branches=odd_steps,
    )


def odd_step(n: int) -> int:
    """Move from the odd root of a branch to the even number it hangs off."""
    _check_natural(n)
    if n % 2 == 0:
        raise CollatzError(f"odd_step needs an odd input, got {n}")
    return 3 * n + 1


def strip_trailing_zeros(n: int) -> tuple[int, int]:
    """Split ``n`` into ``(odd_root, exponent)`` with ``n == odd_root << exponent``.

    The exponent is the 2-adic valuation of ``n``; on Python integers the
    lowest set bit ``n & -n`` gives it directly.
    """
    _check_natural(n)
    exponent = (n & -n).bit_length() - 1
    return n >> exponent, exponent


def stop_time_fast(n: int, budget: int = DEFAULT_BUDGET) -> StopReport:
    """Stopping time by alternating ``3n + 1`` with full trailing-zero strips.

    Raises :class:`BudgetExceeded` after ``budget`` loop iterations.
    """
    _check_natural(n)
    return _report(n, _kernels.fast_counts(n, budget))


def stop_time_bitwise(n: int, budget: int = DEFAULT_BUDGET) -> StopReport:
    """Baseline: one halving (``n >> 1``) or one ``(n << 1) + n + 1`` per loop."""
    _check_natural(n)
    return _report(n, _kernels.bitwise_counts(n, budget))


def stop_time_oracle(n: int, budget: int = DEFAULT_BUDGET) -> StopReport:
    """Brute-force reference using ordinary arithmetic only.

    ``loop_iterations`` is reported in the fast algorithm's units (one per
    ``3n + 1`` and one per maximal run of halvings) so the whole report can
    be compared field by field.
    """
    start = _check_natural(n)
    terms = 1
    odd_terms = 1 if n % 2 == 1 else 0
    odd_steps = divisions = runs = 0
    previous_was_halving = False
    while n != 1:
        if terms > budget:
            raise BudgetExceeded(n, budget)
        if n % 2 == 0:
            n = n // 2
            divisions += 1
            if not previous_was_halving:
                runs += 1
            previous_was_halving = True
        else:
            n = 3 * n + 1
            odd_steps += 1
            previous_was_halving = False
        terms += 1
        if n % 2 == 1:
            odd_terms += 1
    return StopReport(
        input=start,
        stopping_time=terms,
        loop_iterations=odd_steps + runs,
        odd_steps=odd_steps,
        division_steps=divisions,
        odd_count=odd_terms,
        sub_branches=odd_steps,
    )
