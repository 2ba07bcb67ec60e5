import warnings

import pytest


@pytest.fixture(autouse=True)
def _quiet_p2_warning():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="p = 2")
        yield


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
