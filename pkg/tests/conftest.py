"""Shared test plumbing: the acceptance suite records one line per criterion
and this hook replays them at the end of the run so they are visible in the
captured-output summary of a plain pytest invocation."""

_ACCEPTANCE_LINES: list = []


def record_criterion(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
