import numpy as np
import pytest

from risbeam import AngularGrid, ArrayGeometry
from risbeam._kernels import available_backends, warmup

# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance_record():
    """Recorder for one PASS/FAIL summary line per acceptance criterion."""

    def _rec(num: str, title: str, ok: bool, elapsed: float, detail: str = "") -> str:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  criterion {num}: {title} ({elapsed:.2f}s)"
        if detail:
            line += f" [{detail}]"
        ACCEPTANCE_RESULTS.append(line)
        print(line)
        return line

    return _rec


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay the JIT cost once, outside any timed test body
    for backend in available_backends():
        warmup(backend)


@pytest.fixture(scope="session")
def backends():
    return available_backends()


@pytest.fixture
def geom13():
    return ArrayGeometry(13, 0.5, 0.0)


@pytest.fixture
def grid1000():
    return AngularGrid(1000)


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)
