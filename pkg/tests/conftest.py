import pytest

# criterion number -> [title, list of (nodeid, passed)]
_CRITERIA = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            n, title = mark.args
            _CRITERIA.setdefault(n, [title, []])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[n][1].append((item.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, runs = _CRITERIA[n]
        ok = bool(runs) and all(p for _, p in runs)
        status = "PASS" if ok else "FAIL" if runs else "NOT RUN"
        tr.write_line(f"criterion {n}: {status}  {title}")
