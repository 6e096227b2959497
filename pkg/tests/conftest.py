import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[tuple[int, str]] = []


def pytest_runtest_makereport(item, call):
    criterion = item.get_closest_marker("criterion")
    if criterion is None or call.when != "call":
        return
    status = "PASS" if call.excinfo is None else "FAIL"
    number, text = criterion.args
    case = f" [{item.callspec.id}]" if hasattr(item, "callspec") else ""
    ACCEPTANCE_LINES.append((number, f"[{status}] criterion {number}{case}: {text}"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _number, line in sorted(ACCEPTANCE_LINES, key=lambda entry: entry[0]):
            terminalreporter.write_line(line)
