"""Select the kernel backend at import time.

The compiled extension is used when it is importable; set
``FASTCOLLATZ_PURE=1`` to force the pure-Python loops.
"""

import os

from . import _pykernels as python_kernels

try:
    if os.environ.get("FASTCOLLATZ_PURE"):
        raise ImportError("pure-Python backend requested")
    from . import _ckernels as compiled_kernels
except ImportError:
    compiled_kernels = None

active = compiled_kernels if compiled_kernels is not None else python_kernels

BACKEND = active.BACKEND
fast_counts = active.fast_counts
bitwise_counts = active.bitwise_counts
fast_iterations_aggregate = active.fast_iterations_aggregate
verify_chunk = active.verify_chunk


def available():
    """Return the kernel modules that can be imported, keyed by name."""
    found = {"python": python_kernels}
    if compiled_kernels is not None:
        found["c"] = compiled_kernels
    return found
