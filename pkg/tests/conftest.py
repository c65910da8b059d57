import pytest

from wreathlie.polyring import PrimeParams


@pytest.fixture(params=[(3, 2), (3, 3), (5, 2)], ids=lambda pn: f"p{pn[0]}n{pn[1]}")
def small_params(request):
    return PrimeParams(*request.param)


@pytest.fixture
def w32():
    return PrimeParams(3, 2)


@pytest.fixture
def w33():
    return PrimeParams(3, 3)


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Record a criterion outcome for the terminal summary, then assert it."""

    def _record(label, passed, detail):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
        assert passed, detail

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
