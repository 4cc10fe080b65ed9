import pytest

from iotacx.involutive import tensor_iota_k
from iotacx.knots import cn, yn_fixture

# acceptance lines collected by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def x3():
    return tensor_iota_k(cn(3), cn(3))


@pytest.fixture(scope="session")
def y3():
    return yn_fixture(3)
