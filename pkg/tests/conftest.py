_ACCEPTANCE_LINES: list[str] = []


def acceptance_line(num: str, ok: bool, desc: str) -> None:
    """One pass/fail line per acceptance criterion, shown in the summary."""
    status = "PASS" if ok else "FAIL"
    _ACCEPTANCE_LINES.append(f"[acceptance {num}] {status}  {desc}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
