from __future__ import annotations

import re

from hypothesis import settings

settings.register_profile("ci", max_examples=150, deadline=None)
settings.load_profile("ci")

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, ()):
            m = _CRITERION.search(getattr(report, "nodeid", ""))
            if not m:
                continue
            # setup errors count as failures too
            if getattr(report, "when", "call") == "call" or outcome == "error":
                rows[int(m.group(1))] = (m.group(2), "PASS" if outcome == "passed" else "FAIL")
    if rows:
        terminalreporter.section("acceptance criteria")
        for n in sorted(rows):
            name, verdict = rows[n]
            terminalreporter.write_line(f"criterion {n:2d} {name:<32} {verdict}")
