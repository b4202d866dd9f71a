import sys

import numpy as np
import pytest

from divquad.variety import VarietySpec

DIMS = (1, 2, 4, 8)


@pytest.fixture
def rng():
    return np.random.default_rng(20260419)


@pytest.fixture(params=DIMS, ids=lambda n: f"n{n}")
def n(request):
    return request.param


@pytest.fixture
def std_spec(n):
    return VarietySpec.standard_spec(n)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
