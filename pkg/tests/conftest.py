import os

import pytest
from hypothesis import HealthCheck, settings

from tanglekit import corpus as co

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("TANGLEKIT_HYPOTHESIS", "default"))


@pytest.fixture(scope="session")
def small_corpus():
    """Every corpus tangle with at most 4 crossings."""
    return co.default_corpus(4)


@pytest.fixture(scope="session")
def corpus6():
    return co.default_corpus(6)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, summary_lines

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in summary_lines():
            terminalreporter.write_line(line)
