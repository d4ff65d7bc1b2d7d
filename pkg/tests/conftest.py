from collections import defaultdict

import pytest

# criterion number -> (title, [passed, ...]) for the closing summary
_criteria = defaultdict(lambda: ["", []])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    report = outcome.get_result()
    if report.when == "call" or report.outcome != "passed":
        number, title = marker.args
        entry = _criteria[number]
        entry[0] = title
        entry[1].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, results = _criteria[number]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}")
