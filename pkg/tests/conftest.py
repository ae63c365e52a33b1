from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running oracle comparisons")


@pytest.fixture
def generic():
    from symblob.params import WeightParams
    return WeightParams(Fraction(1, 3), Fraction(2, 5))


@pytest.fixture
def report():
    """Record one acceptance line: report(k, ok, detail)."""
    def rec(k, ok, detail):
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok
    return rec


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
