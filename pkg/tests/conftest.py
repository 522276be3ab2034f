from __future__ import annotations

import sys

import pytest
from hypothesis import settings

from coarsepath.enumeration import enumerate_connected_graphs

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def corpus(max_n: int):
    return [g for n in range(1, max_n + 1) for g in enumerate_connected_graphs(n)]


@pytest.fixture(scope="session")
def corpus6():
    return corpus(6)


@pytest.fixture(scope="session")
def corpus7():
    return corpus(7)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
