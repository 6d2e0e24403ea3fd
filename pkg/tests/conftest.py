import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, tuple[str, bool, float, str]] = {}


class AcceptanceRecorder:
    @contextmanager
    def criterion(self, number: int, title: str, max_seconds: float):
        start = time.perf_counter()
        ok, note = False, ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if elapsed >= max_seconds:
                note = f"runtime {elapsed:.2f}s exceeds {max_seconds}s"
                raise AssertionError(note)
            ok = True
        except BaseException as exc:
            note = note or f"{type(exc).__name__}: {exc}".splitlines()[0][:120]
            raise
        finally:
            _ACCEPTANCE[number] = (title, ok, time.perf_counter() - start, note)


@pytest.fixture
def acceptance():
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, elapsed, note = _ACCEPTANCE[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({elapsed:.2f}s)"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)
