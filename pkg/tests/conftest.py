from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextmanager
    def record(number: int, title: str, note: str = ""):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _LINES.append(f"FAIL  criterion {number:2d}: {title} ({elapsed:.3f}s) -- {type(exc).__name__}: {exc}")
            raise
        elapsed = time.perf_counter() - start
        suffix = f" [{note}]" if note else ""
        _LINES.append(f"PASS  criterion {number:2d}: {title} ({elapsed:.3f}s){suffix}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
