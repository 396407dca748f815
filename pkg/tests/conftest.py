import pytest

from rootcomponents.rootdata import build_cartan

ALL_TYPES = (
    [f"A{n}" for n in range(1, 7)]
    + [f"B{n}" for n in range(3, 7)]
    + [f"C{n}" for n in range(2, 7)]
    + [f"D{n}" for n in range(4, 7)]
    + ["E6", "E7", "E8", "F4", "G2"]
)

SMALL_TYPES = ["A1", "A2", "A3", "B3", "C2", "C3", "D4", "G2", "F4"]


@pytest.fixture(params=ALL_TYPES)
def any_cd(request):
    return build_cartan(request.param)


@pytest.fixture(params=SMALL_TYPES)
def small_cd(request):
    return build_cartan(request.param)


# acceptance criteria record a one-line verdict here; printed at the end of the run
CRITERIA: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])
