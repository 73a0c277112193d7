import math
import sys

import pytest

from nvsinc.params import default_config, validate_config

OMEGA = 5 * math.pi / 12


@pytest.fixture(scope="session")
def cfg():
    """The N=4 configuration used throughout (omega = 5*pi/12)."""
    return default_config(OMEGA)


@pytest.fixture(scope="session")
def cfg_half():
    return validate_config(math.pi / 2, 3 * math.pi / 4, 4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
