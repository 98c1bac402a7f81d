import numpy as np
import pytest

from riemann_lie import catalog

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Collect one summary line per acceptance criterion."""
    def _record(line: str):
        ACCEPTANCE_LINES.append(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def heis():
    return catalog.named("heisenberg3").alg


@pytest.fixture
def so3():
    return catalog.named("so3").alg


@pytest.fixture
def aff1():
    return catalog.named("aff1").alg


@pytest.fixture
def e2():
    return catalog.named("e2").alg


@pytest.fixture
def u2():
    return catalog.named("u2").alg


def basis_vec(n, i):
    v = np.zeros(n)
    v[i] = 1.0
    return v
