import sys

import pytest

from fastcollatz import _kernels

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

ACCEPTANCE_RESULTS = {}

KERNELS = _kernels.available()


@pytest.fixture(params=sorted(KERNELS), ids=lambda name: f"backend={name}")
def kernels(request):
    return KERNELS[request.param]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section(f"acceptance criteria (kernel backend: {_kernels.BACKEND})")
    for key in sorted(ACCEPTANCE_RESULTS):
        title, outcome = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if outcome else 'FAIL'}  {key}  {title}")
