from __future__ import annotations

import functools
import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from greenadams.greenring import GreenContext  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def shared_context(p: int, e: int) -> GreenContext:
    """One memoized context per (p, e), shared by the whole session."""
    return GreenContext(p, e)


@pytest.fixture
def ctx_factory():
    return shared_context


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
