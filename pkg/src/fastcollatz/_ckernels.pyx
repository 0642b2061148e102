# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``.

Values below 2**64 run on a single machine word.  Larger values live in a
little-endian array of 64-bit limbs that is updated in place: ``3n + 1`` is
one carry pass, a trailing-zero strip is one multiword shift.  Results are
bit-identical to the pure-Python versions.
"""

import sys

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

from .errors import BudgetExceeded

if sys.byteorder != "little":
    raise ImportError("limb layout assumes a little-endian host")

BACKEND = "c"

cdef extern from *:
    """
    typedef unsigned __int128 fc_u128;
    """
    ctypedef unsigned long long fc_u128
    int __builtin_ctzll(unsigned long long x) nogil
    int __builtin_clzll(unsigned long long x) nogil

cdef uint64_t ODD_LIMIT = (<uint64_t>0xFFFFFFFFFFFFFFFF - 1) // 3
cdef object WORD_LIMIT = 1 << 64

cdef enum Status:
    DONE = 0
    OVERFLOW = 1
    OUT_OF_BUDGET = 2

cdef struct Counters:
    long long steps
    long long iterations
    long long odd_steps

cdef struct Big:
    uint64_t* d
    Py_ssize_t size
    Py_ssize_t cap


# -- multiword helpers -------------------------------------------------------

cdef int big_reserve(Big* b, Py_ssize_t cap) except -1:
    cdef uint64_t* p
    if cap <= b.cap:
        return 0
    p = <uint64_t*>realloc(b.d, cap * sizeof(uint64_t))
    if p == NULL:
        raise MemoryError()
    b.d = p
    b.cap = cap
    return 0


cdef int big_from_int(Big* b, object n) except -1:
    cdef Py_ssize_t limbs = (n.bit_length() + 63) // 64
    data = n.to_bytes(limbs * 8, "little")
    b.d = NULL
    b.cap = 0
    big_reserve(b, limbs + limbs // 8 + 4)
    memcpy(b.d, PyBytes_AS_STRING(data), limbs * 8)
    b.size = limbs
    return 0


cdef int big_from_word(Big* b, uint64_t m) except -1:
    b.d = NULL
    b.cap = 0
    big_reserve(b, 4)
    b.d[0] = m
    b.size = 1
    return 0


cdef object big_to_int(Big* b):
    data = PyBytes_FromStringAndSize(<char*>b.d, b.size * 8)
    return int.from_bytes(data, "little")


cdef int big_mul3_add1(Big* b) except -1:
    cdef fc_u128 t
    cdef uint64_t carry = 1
    cdef Py_ssize_t i
    for i in range(b.size):
        t = <fc_u128>b.d[i] * 3 + carry
        b.d[i] = <uint64_t>t
        carry = <uint64_t>(t >> 64)
    if carry:
        if b.size == b.cap:
            big_reserve(b, b.cap * 2)
        b.d[b.size] = carry
        b.size += 1
    return 0


cdef int big_shl1_add_self_add1(Big* b) except -1:
    # (n << 1) + n + 1, limb by limb
    cdef uint64_t carry = 1, top = 0, shifted, x, s
    cdef unsigned int c1, c2
    cdef Py_ssize_t i
    for i in range(b.size):
        x = b.d[i]
        shifted = (x << 1) | top
        top = x >> 63
        s = shifted + x
        c1 = s < x
        b.d[i] = s + carry
        c2 = b.d[i] < s
        carry = c1 + c2
    carry += top
    if carry:
        if b.size == b.cap:
            big_reserve(b, b.cap * 2)
        b.d[b.size] = carry
        b.size += 1
    return 0


cdef inline Py_ssize_t big_low_zero_limbs(Big* b) nogil:
    cdef Py_ssize_t w = 0
    while b.d[w] == 0:
        w += 1
    return w


cdef void big_shr(Big* b, Py_ssize_t w, int s) nogil:
    """b >>= 64 * w + s."""
    cdef Py_ssize_t i, n = b.size - w
    if s == 0:
        for i in range(n):
            b.d[i] = b.d[i + w]
    else:
        for i in range(n - 1):
            b.d[i] = (b.d[i + w] >> s) | (b.d[i + w + 1] << (64 - s))
        b.d[n - 1] = b.d[n - 1 + w] >> s
    b.size = n
    while b.size > 1 and b.d[b.size - 1] == 0:
        b.size -= 1


cdef inline bint big_fits_word_after_shift(Big* b, Py_ssize_t w, int s) nogil:
    cdef Py_ssize_t bits = 64 * b.size - __builtin_clzll(b.d[b.size - 1])
    return bits - (64 * w + s) <= 64


cdef int big_shr_mul3_add1(Big* b, Py_ssize_t w, int s) except -1:
    """b = 3 * (b >> (64 * w + s)) + 1 in a single pass."""
    cdef Py_ssize_t i, n = b.size - w
    cdef uint64_t x, carry = 1
    cdef fc_u128 t
    for i in range(n):
        if s == 0:
            x = b.d[i + w]
        elif i + 1 < n:
            x = (b.d[i + w] >> s) | (b.d[i + w + 1] << (64 - s))
        else:
            x = b.d[i + w] >> s
        t = <fc_u128>x * 3 + carry
        b.d[i] = <uint64_t>t
        carry = <uint64_t>(t >> 64)
    b.size = n
    if carry:
        if b.size == b.cap:
            big_reserve(b, b.cap * 2)
        b.d[b.size] = carry
        b.size += 1
    while b.size > 1 and b.d[b.size - 1] == 0:
        b.size -= 1
    return 0


cdef void big_shr1(Big* b) nogil:
    cdef Py_ssize_t i
    for i in range(b.size - 1):
        b.d[i] = (b.d[i] >> 1) | (b.d[i + 1] << 63)
    b.d[b.size - 1] >>= 1
    if b.size > 1 and b.d[b.size - 1] == 0:
        b.size -= 1


# -- fast algorithm ----------------------------------------------------------

cdef inline Status _fast_word(uint64_t* pn, long long budget, Counters* c) nogil:
    # After a strip n is odd and after 3n + 1 it is even, so the loop body is
    # one climb followed by one strip; counters match the one-branch form.
    cdef uint64_t n = pn[0]
    cdef long long iterations = c.iterations, steps = c.steps, odd_steps = c.odd_steps
    cdef int tz
    cdef Status status = DONE
    if n != 1 and n & 1 == 0:
        if iterations >= budget:
            status = OUT_OF_BUDGET
        else:
            tz = __builtin_ctzll(n)
            n >>= tz
            steps += tz
            iterations += 1
    while status == DONE and n != 1:
        if iterations >= budget:
            status = OUT_OF_BUDGET
            break
        if n > ODD_LIMIT:
            status = OVERFLOW
            break
        n = 3 * n + 1
        odd_steps += 1
        steps += 1
        iterations += 1
        if iterations >= budget:
            status = OUT_OF_BUDGET
            break
        tz = __builtin_ctzll(n)
        n >>= tz
        steps += tz
        iterations += 1
    pn[0] = n
    c.iterations = iterations
    c.steps = steps
    c.odd_steps = odd_steps
    return status


cdef int _fast_limbs(Big* b, long long budget, Counters* c) except -1:
    # A strip only records the pending shift (w limbs, s bits); the next
    # climb applies it while computing 3n + 1, so each round is one pass.
    cdef uint64_t m
    cdef Status status
    cdef Py_ssize_t w = 0
    cdef int s = 0
    cdef bint pending = False
    while True:
        if pending and big_fits_word_after_shift(b, w, s):
            big_shr(b, w, s)
            w = s = 0
            pending = False
        if not pending and b.size == 1:
            m = b.d[0]
            status = _fast_word(&m, budget, c)
            if status == DONE:
                return 0
            if status == OUT_OF_BUDGET:
                raise BudgetExceeded(m, budget)
            b.d[0] = m
        if c.iterations >= budget:
            if pending:
                big_shr(b, w, s)
            raise BudgetExceeded(big_to_int(b), budget)
        c.iterations += 1
        if pending or b.d[0] & 1:
            big_shr_mul3_add1(b, w, s)
            w = s = 0
            pending = False
            c.odd_steps += 1
            c.steps += 1
        else:
            w = big_low_zero_limbs(b)
            s = __builtin_ctzll(b.d[w])
            pending = True
            c.steps += 64 * w + s


cdef int _fast_any(object n, long long budget, Counters* c) except -1:
    cdef uint64_t m
    cdef Status status
    cdef Big b
    if n < WORD_LIMIT:
        m = n
        status = _fast_word(&m, budget, c)
        if status == DONE:
            return 0
        if status == OUT_OF_BUDGET:
            raise BudgetExceeded(m, budget)
        big_from_word(&b, m)
    else:
        big_from_int(&b, n)
    try:
        _fast_limbs(&b, budget, c)
    finally:
        free(b.d)
    return 0


# -- bitwise baseline --------------------------------------------------------

cdef inline Status _bitwise_word(uint64_t* pn, long long budget, Counters* c) nogil:
    cdef uint64_t n = pn[0]
    while n != 1:
        if c.steps >= budget:
            pn[0] = n
            return OUT_OF_BUDGET
        if n & 1 == 0:
            n = n >> 1
        else:
            if n > ODD_LIMIT:
                pn[0] = n
                return OVERFLOW
            n = (n << 1) + n + 1
            c.odd_steps += 1
        c.steps += 1
    pn[0] = n
    return DONE


cdef int _bitwise_limbs(Big* b, long long budget, Counters* c) except -1:
    cdef uint64_t m
    cdef Status status
    while True:
        if b.size == 1:
            m = b.d[0]
            status = _bitwise_word(&m, budget, c)
            if status == DONE:
                return 0
            if status == OUT_OF_BUDGET:
                raise BudgetExceeded(m, budget)
            b.d[0] = m
        if c.steps >= budget:
            raise BudgetExceeded(big_to_int(b), budget)
        if b.d[0] & 1 == 0:
            big_shr1(b)
        else:
            big_shl1_add_self_add1(b)
            c.odd_steps += 1
        c.steps += 1


cdef int _bitwise_any(object n, long long budget, Counters* c) except -1:
    cdef uint64_t m
    cdef Status status
    cdef Big b
    if n < WORD_LIMIT:
        m = n
        status = _bitwise_word(&m, budget, c)
        if status == DONE:
            return 0
        if status == OUT_OF_BUDGET:
            raise BudgetExceeded(m, budget)
        big_from_word(&b, m)
    else:
        big_from_int(&b, n)
    try:
        _bitwise_limbs(&b, budget, c)
    finally:
        free(b.d)
    return 0


# -- Python entry points -----------------------------------------------------

def fast_counts(n, long long budget):
    cdef Counters c = Counters(0, 0, 0)
    if n < 1:
        raise ValueError("n must be >= 1")
    _fast_any(n, budget, &c)
    return c.steps, c.iterations, c.odd_steps, c.steps - c.odd_steps


def bitwise_counts(n, long long budget):
    cdef Counters c = Counters(0, 0, 0)
    if n < 1:
        raise ValueError("n must be >= 1")
    _bitwise_any(n, budget, &c)
    return c.steps, c.steps, c.odd_steps, c.steps - c.odd_steps


def fast_iterations_aggregate(lo, hi, long long budget):
    """Return ``(count, total, best, worst)`` of fast loop iterations over [lo, hi]."""
    cdef Counters c
    cdef uint64_t m, w, start, stop
    cdef Status status
    cdef long long total = 0, best = -1, worst = -1
    if lo > hi:
        return 0, 0, None, None
    if lo < 1:
        raise ValueError("lo must be >= 1")
    if hi >= WORD_LIMIT:
        from ._pykernels import fast_iterations_aggregate as slow
        return slow(lo, hi, budget)
    start = lo
    stop = hi
    m = start
    while True:
        c = Counters(0, 0, 0)
        w = m
        status = _fast_word(&w, budget, &c)
        if status == OVERFLOW:
            c = Counters(0, 0, 0)
            _fast_any(m, budget, &c)
        elif status == OUT_OF_BUDGET:
            raise BudgetExceeded(w, budget)
        total += c.iterations
        if best < 0 or c.iterations < best:
            best = c.iterations
        if c.iterations > worst:
            worst = c.iterations
        if m == stop:
            break
        m += 1
    return stop - start + 1, total, best, worst


def verify_chunk(lo, hi, long long budget, long long cross_check_every, origin):
    """Compiled twin of ``_pykernels.verify_chunk``; same return layout."""
    cdef Counters fast, base
    cdef long long checked = 0
    cdef long long max_steps = -1
    mismatches = []
    incidents = []
    argmax = 0
    if lo < 1:
        raise ValueError("lo must be >= 1")
    n = lo
    while n <= hi:
        fast = Counters(0, 0, 0)
        try:
            _fast_any(n, budget, &fast)
            if cross_check_every and (n - origin) % cross_check_every == 0:
                base = Counters(0, 0, 0)
                _bitwise_any(n, budget, &base)
                if base.steps != fast.steps:
                    mismatches.append((n, fast.steps + 1, base.steps + 1))
        except BudgetExceeded:
            incidents.append(n)
            n += 1
            continue
        checked += 1
        if fast.steps > max_steps:
            max_steps = fast.steps
            argmax = n
        n += 1
    return checked, mismatches, max_steps, argmax, incidents
