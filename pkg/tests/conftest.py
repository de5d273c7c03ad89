from __future__ import annotations

import pytest
from hypothesis import settings

from thetarcc import catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def t31():
    return catalog.load("theta_t31")


@pytest.fixture(scope="session")
def trefoil():
    return catalog.load("trefoil")


@pytest.fixture(scope="session")
def variants():
    return catalog.generated_variants()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
