import pytest

from toephank.symbol import RationalSymbolBC


def rel_err(x, y) -> float:
    x, y = complex(x), complex(y)
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


@pytest.fixture
def ex51():
    return RationalSymbolBC.make(["1/2"], ["1/3"], ["1/4"], ["1/5"])


@pytest.fixture
def ex52():
    return RationalSymbolBC.make(["2"], ["1/3"], ["1/4"], ["1/5"])


@pytest.fixture
def ex53():
    return RationalSymbolBC.make(["1/5"], ["i/2"], ["1/3"], ["1/4"])


@pytest.fixture
def ex54():
    return RationalSymbolBC.make(["1/5", "3/5"], ["i/2"], ["1/3", "i/3"], ["1/4"])


@pytest.fixture
def one():
    return RationalSymbolBC.make([], [], [], [])


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance():
    def record(number, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split("criterion ")[1]):
            terminalreporter.write_line(line)
