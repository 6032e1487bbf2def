"""Collects acceptance verdicts and prints them at the end of the run."""

import pytest

ACCEPTANCE: dict = {}


@pytest.fixture
def verdict():
    """``verdict(ac, ok, detail)`` stores one line for the terminal summary."""

    def record(ac: int, ok: bool, detail: str) -> None:
        prev = ACCEPTANCE.get(ac)
        if prev is not None:
            ok = ok and prev[0]
            detail = f"{prev[1]}; {detail}"
        ACCEPTANCE[ac] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for ac in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[ac]
        terminalreporter.write_line(f"AC{ac:<2} {'PASS' if ok else 'FAIL'}  {detail}")
