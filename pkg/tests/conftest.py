"""Shared pytest hooks: print the acceptance verdict block after a run."""

from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter):
    for name in ("test_acceptance", "tests.test_acceptance"):
        module = sys.modules.get(name)
        if module is not None and getattr(module, "VERDICTS", None):
            terminalreporter.section("acceptance criteria")
            for line in module.VERDICTS:
                terminalreporter.write_line(line)
            break
