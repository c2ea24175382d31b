from __future__ import annotations

import pytest


class AcceptanceLedger:
    """PASS/FAIL per acceptance criterion; a criterion passes only if all its parts do."""

    def __init__(self):
        self.parts: dict[int, list[tuple[bool, str]]] = {}

    def record(self, criterion: int, ok: bool, detail: str) -> bool:
        self.parts.setdefault(criterion, []).append((ok, detail))
        return ok

    def lines(self) -> list[str]:
        out = []
        for k in sorted(self.parts):
            parts = self.parts[k]
            verdict = "PASS" if all(ok for ok, _ in parts) else "FAIL"
            detail = "; ".join(d for _, d in parts)
            out.append(f"CRITERION {k:2d}: {verdict}  {detail}")
        return out


_LEDGER = AcceptanceLedger()


@pytest.fixture(scope="session")
def acceptance():
    return _LEDGER


def pytest_terminal_summary(terminalreporter):
    lines = _LEDGER.lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
