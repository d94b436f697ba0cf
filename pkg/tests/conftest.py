from __future__ import annotations

import contextlib

import pytest

from snbcontest import assemble
from synth import random_raw

_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def raw_small():
    return random_raw(seed=11, n_persons=60)


@pytest.fixture(scope="session")
def net_small(raw_small):
    return assemble(raw_small)


@pytest.fixture(scope="session")
def raw_medium():
    return random_raw(seed=5, n_persons=150, edge_prob=0.03, n_forums=20)


@pytest.fixture(scope="session")
def net_medium(raw_medium):
    return assemble(raw_medium)


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome for the end-of-run summary."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        try:
            yield
        except pytest.skip.Exception:
            _ACCEPTANCE.append(f"[SKIP] criterion {number}: {title}")
            raise
        except BaseException:
            _ACCEPTANCE.append(f"[FAIL] criterion {number}: {title}")
            raise
        _ACCEPTANCE.append(f"[PASS] criterion {number}: {title}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
