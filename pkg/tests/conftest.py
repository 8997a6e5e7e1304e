import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Record a criterion's outcome; the terminal summary prints one line per criterion."""
    results = request.config.stash[_RESULTS]

    def record(number: int, title: str, detail: str = ""):
        results[number] = (title, detail)

    record.results = results
    yield record


def pytest_runtest_makereport(item, call):
    if call.when != "call" or "criterion" not in getattr(item, "fixturenames", ()):
        return
    num = item.get_closest_marker("criterion")
    if num is None:
        return
    results = item.config.stash[_RESULTS]
    n, title = num.args
    detail = results.get(n, (title, ""))[1]
    status = "PASS" if call.excinfo is None else "FAIL"
    if call.excinfo is not None:
        detail = str(call.excinfo.value).splitlines()[0] if str(call.excinfo.value) else call.excinfo.typename
    results[n] = (title, f"{status}: {detail}")


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, line = results[n]
        terminalreporter.write_line(f"criterion {n} [{title}] {line}")
