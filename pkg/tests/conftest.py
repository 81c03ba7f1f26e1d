from __future__ import annotations

import time

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion and return a timer."""
    lines = request.config.stash[_LINES]
    start = time.perf_counter()

    def report(number: int, title: str, ok: bool, detail: str = "", seconds: float | None = None) -> float:
        elapsed = time.perf_counter() - start if seconds is None else seconds
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.1f}s){' - ' + detail if detail else ''}"
        lines.append(line)
        print(line)
        return elapsed

    return report
