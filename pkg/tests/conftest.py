import pytest

from rapidsat import available_backends

# criterion number -> [title, all tests passed, detail lines]
RESULTS = {}


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if report.when == "setup" and report.passed:
        return
    if report.when == "teardown":
        return
    number, title = mark.args
    entry = RESULTS.setdefault(number, [title, True, []])
    entry[1] = entry[1] and report.passed and not hasattr(report, "wasxfail")
    entry[2] += [str(v) for k, v in item.user_properties if k == "detail"]


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok, details = RESULTS[number]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
        if details:
            line += " | " + "; ".join(details)
        tr.write_line(line)
