import random

import pytest

from scdgla.artin import make_dual_numbers
from scdgla.instances import BUNDLED, heisenberg_like


@pytest.fixture
def L():
    return heisenberg_like()


@pytest.fixture
def A3():
    return make_dual_numbers(3)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def cech3():
    return BUNDLED["cech3"]()


@pytest.fixture(scope="session")
def pair():
    return BUNDLED["pair"]()


@pytest.fixture
def acceptance(request, capsys):
    """Record and print one pass/fail line for an acceptance criterion."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def report(number, ok, detail):
        line = "criterion %2d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
