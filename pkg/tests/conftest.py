import math

import pytest

from eulgen.field import make_grid

TWO_PI = 2.0 * math.pi


@pytest.fixture
def grid16():
    return make_grid(2, 16, TWO_PI)


@pytest.fixture
def grid8():
    return make_grid(2, 8, TWO_PI)


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def report(request):
    """Record one acceptance line; printed in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def _record(number, text, passed):
        lines[number] = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {text}"
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
