import sys, pathlib
sys.path.insert(0, str(pathlib.Path(__file__).parent))

import pytest

from circumnav import _kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_jit():
    # compile once up front so timing-sensitive tests measure simulation only
    _kernels.simulate(0.0, 0.0, 0.0, 0.0, -10.0, 1.0, 0.01, 10.0, 0, 0, 0.01, 2, False, 1.0)
    _kernels.simulate(0.0, 0.0, 0.0, 0.0, -10.0, 1.0, 0.01, 10.0, 1, 1, 0.01, 2, True, 1.0)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
