"""Pure-Python hot loops.

Every function here has a twin with the same signature in the compiled
``_ckernels`` module.  Counter tuples are ``(steps, loop_iterations,
odd_steps, division_steps)`` where ``steps`` is the number of Collatz
steps from ``n`` down to 1 (sequence length minus one).
"""

from .errors import BudgetExceeded

BACKEND = "python"


def fast_counts(n, budget):
    if n < 1:
        raise ValueError("n must be >= 1")
    # A strip always leaves n odd and 3n + 1 always makes it even, so after
    # an optional leading strip each round is one climb plus one strip.
    lead = divisions = odd_steps = 0
    if n != 1 and n & 1 == 0:
        if budget <= 0:
            raise BudgetExceeded(n, budget)
        exponent = (n & -n).bit_length() - 1
        n >>= exponent
        divisions = exponent
        lead = 1
    # iterations so far = lead + 2 * odd_steps (minus one mid-round)
    climb_cap = (budget - lead + 1) // 2
    strip_cap = (budget - lead + 2) // 2
    while n != 1:
        if odd_steps >= climb_cap:
            raise BudgetExceeded(n, budget)
        n = 3 * n + 1
        odd_steps += 1
        if odd_steps >= strip_cap:
            raise BudgetExceeded(n, budget)
        exponent = (n & -n).bit_length() - 1
        n >>= exponent
        divisions += exponent
    return odd_steps + divisions, lead + 2 * odd_steps, odd_steps, divisions


def bitwise_counts(n, budget):
    if n < 1:
        raise ValueError("n must be >= 1")
    length = 1
    odd_steps = 0
    while n != 1:
        if length > budget:
            raise BudgetExceeded(n, budget)
        if n & 1 == 0:
            n = n >> 1
        else:
            n = (n << 1) + n + 1
            odd_steps += 1
        length += 1
    steps = length - 1
    return steps, steps, odd_steps, steps - odd_steps


def fast_iterations_aggregate(lo, hi, budget):
    """Return ``(count, total, best, worst)`` of fast loop iterations over [lo, hi]."""
    total = 0
    best = worst = None
    for n in range(lo, hi + 1):
        iterations = fast_counts(n, budget)[1]
        total += iterations
        if best is None or iterations < best:
            best = iterations
        if worst is None or iterations > worst:
            worst = iterations
    return hi - lo + 1, total, best, worst


def verify_chunk(lo, hi, budget, cross_check_every, origin):
    """Run the fast algorithm (and optionally the baseline) over [lo, hi].

    Returns ``(checked, mismatches, max_steps, argmax, incidents)``.  Inputs
    whose budget runs out are listed in ``incidents`` and are not counted
    as checked.  ``max_steps`` is -1 when nothing was checked.  The baseline
    runs on inputs with ``(n - origin) % cross_check_every == 0``; 0 disables it.
    """
    checked = 0
    mismatches = []
    incidents = []
    max_steps = -1
    argmax = 0
    for n in range(lo, hi + 1):
        try:
            steps = fast_counts(n, budget)[0]
            if cross_check_every and (n - origin) % cross_check_every == 0:
                baseline = bitwise_counts(n, budget)[0]
                if baseline != steps:
                    mismatches.append((n, steps + 1, baseline + 1))
        except BudgetExceeded:
            incidents.append(n)
            continue
        checked += 1
        if steps > max_steps:
            max_steps = steps
            argmax = n
    return checked, mismatches, max_steps, argmax, incidents
