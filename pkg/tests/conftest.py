from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[int, tuple[bool, str, float]] = {}


class CriterionRecorder:
    @contextmanager
    def __call__(self, number: int, title: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _RESULTS[number] = (False, title, time.perf_counter() - start)
            raise
        _RESULTS[number] = (True, title, time.perf_counter() - start)


@pytest.fixture
def criterion():
    return CriterionRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, title, secs = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
