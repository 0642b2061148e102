"""Collatz stopping times by branch-root stripping.

>>> from fastcollatz import stop_time_fast
>>> r = stop_time_fast(20480)
>>> r.stopping_time, r.loop_iterations
(18, 3)
"""

from ._kernels import BACKEND
from .analysis import (
    LinearLogFit,
    RangeStats,
    comparison_table,
    doubling_schedule,
    fit_two_point,
    improvement_percent,
    range_stats,
)
from .codeword import CodeWord, Symbol, code_length_law, decode, encode
from .core import (
    DEFAULT_BUDGET,
    StopReport,
    odd_step,
    stop_time_bitwise,
    stop_time_fast,
    stop_time_oracle,
    strip_trailing_zeros,
)
from .errors import BudgetExceeded, CollatzError
from .expr import ParseError, parse_input
from .verify import VerifyReport, verify_range, verify_window

__version__ = "0.1.0"
