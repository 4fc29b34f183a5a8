import os

from hypothesis import settings

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))

import pytest

_ACCEPTANCE: dict[str, dict] = {}


class _Criterion:
    """Context manager recording pass/fail for one acceptance criterion;
    several tests may contribute to the same key."""

    def __init__(self, key: str, title: str):
        self.key, self.title = key, title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        entry = _ACCEPTANCE.setdefault(self.key, {"title": self.title, "failures": []})
        if exc_type is not None:
            msg = str(exc).splitlines()[0] if str(exc) else ""
            entry["failures"].append(f"{exc_type.__name__}: {msg}")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=int):
        entry = _ACCEPTANCE[key]
        status = "FAIL" if entry["failures"] else "PASS"
        line = f"{status}  [{key}] {entry['title']}"
        if entry["failures"]:
            line += "  -- " + "; ".join(entry["failures"])
        terminalreporter.write_line(line)
