import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """``acceptance(n, ok, detail)`` records one line for the terminal summary."""
    store = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(n, ok, detail=""):
        store[n] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        ok, detail = store[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
