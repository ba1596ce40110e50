"""Shared fixtures and the acceptance-criteria summary hook.

Acceptance tests record one line per criterion via :func:`record_criterion`;
``pytest_terminal_summary`` prints the collected lines at the end of the run
so the pass/fail ledger is visible regardless of output capturing.
"""

from __future__ import annotations

import json
import pathlib

import numpy as np
import pytest

import qwentropy as qw

GOLDEN_PATH = pathlib.Path(__file__).parent / "golden" / "limits_hadamard.json"

_CRITERIA: list[tuple[int, bool, str]] = []


def record_criterion(num: int, ok: bool, detail: str) -> bool:
    """Log one acceptance-criterion outcome and echo it to stdout."""
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    _CRITERIA.append((num, ok, detail))
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="session")
def hadamard() -> qw.Coin:
    return qw.named_coin("hadamard")


@pytest.fixture(scope="session")
def rot3() -> qw.Coin:
    """rotation(pi/3): entries (1/2, sqrt3/2 / sqrt3/2, -1/2)."""
    return qw.named_coin("rotation(pi/3)")


@pytest.fixture(scope="session")
def left_state() -> qw.QubitState:
    return qw.make_state(1, 0)


@pytest.fixture(scope="session")
def right_state() -> qw.QubitState:
    return qw.make_state(0, 1)


@pytest.fixture(scope="session")
def symmetric_state() -> qw.QubitState:
    """(1/sqrt2, i/sqrt2): drift-free for real coins."""
    return qw.make_state(2**-0.5, 1j * 2**-0.5)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260817)


@pytest.fixture(scope="session")
def golden() -> dict:
    """Frozen reference values for the Hadamard walk (see tests/golden/)."""
    return json.loads(GOLDEN_PATH.read_text())
