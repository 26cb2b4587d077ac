import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when == "teardown":
        return
    if report.when == "setup" and report.passed:
        return
    n, title = mark.args
    entry = _criteria.setdefault(n, [title, True, 0])
    entry[2] += report.when == "call"
    entry[1] = entry[1] and not report.failed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok, runs = _criteria[n]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  AC{n}  {title}  ({runs} checks)")
