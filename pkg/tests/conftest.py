import pytest

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    status = "PASS" if rep.passed else "FAIL"
    ACCEPTANCE_LINES[marker.args[0]] = f"[{status}] {marker.args[0]}: {marker.args[1]}"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.removeprefix("AC"))):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
