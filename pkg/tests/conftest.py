import pytest

from iwatchdog.config import ScenarioConfig

_criteria: dict[int, list] = {}


@pytest.fixture
def small_cfg():
    return ScenarioConfig(node_count=30, duration_s=5.0, seed=7)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    row = _criteria.setdefault(number, [title, True, 0.0])
    row[1] = row[1] and report.passed
    row[2] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, passed, secs = _criteria[n]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {n}: {title} ({secs:.2f} s)")
