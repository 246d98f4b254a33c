import pytest


@pytest.fixture
def criterion(record_property):
    """Label an acceptance test so the summary prints one line for it."""

    def label(number: int, title: str):
        record_property("criterion", f"{number:2d}  {title}")

    return label


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(rep.user_properties)
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  criterion {name}")
