from functools import lru_cache

import pytest

from cltlab import constructors as C

# lines collected by the acceptance module, echoed after the run
ACCEPTANCE_LINES: list[str] = []


FIXTURE_SPECS = [
    "cyclic:1",
    "cyclic:12",
    "cyclic:27",
    "dp(cyclic:3,cyclic:9)",
    "elemab:2,3",
    "elemab:3,3",
    "q8",
    "dih:8",
    "dic:12",
    "sl23",
    "sym:4",
    "heis:3",
    "mod:3",
    "zq3xzp:7,2",
    "eq3xzp:2,3",
    "sdp(elemab:3,1,8,matrix:[2])",
    "dp(cyclic:3,q8)",
    "csdp(3,dih:8,[2,1])",
]


@lru_cache(maxsize=None)
def fixture_group(spec):
    return C.build(spec)


@pytest.fixture(params=FIXTURE_SPECS)
def fixture(request):
    return fixture_group(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
