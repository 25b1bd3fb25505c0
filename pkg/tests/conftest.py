import pytest

from cdloops.analysis import Analysis

_LOG = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LOG] = []


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    return pytestconfig.stash[_LOG]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LOG, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def t_analysis():
    """Level 5: the 64-element trigintaduonion basis loop."""
    return Analysis(5)


@pytest.fixture(scope="session")
def s_analysis():
    return Analysis(4)
