import sys

import numpy as np
import pytest

from brinkman_mg.grid import StateVector, build_grid


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_state(grid, rng):
    return StateVector(
        rng.standard_normal(grid.shape("u")),
        rng.standard_normal(grid.shape("v")),
        rng.standard_normal(grid.shape("p")),
    )


@pytest.fixture
def grid8():
    return build_grid(8)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (int(k.split(".")[0].rstrip("ab")), k)):
        ok, detail = results[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
