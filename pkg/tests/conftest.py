import time

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a runtime limit in seconds")


class Stopwatch:
    def __init__(self, node, limit):
        self.node = node
        self.limit = limit
        self.start = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.start
        self.node.user_properties.append(("elapsed", elapsed))
        assert elapsed < self.limit, f"took {elapsed:.2f} s, limit {self.limit} s"


@pytest.fixture
def stopwatch(request):
    m = request.node.get_closest_marker("criterion")
    return Stopwatch(request.node, m.args[2])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    number, title = m.args[0], m.args[1]
    entry = _RESULTS.setdefault(number, {"title": title, "limit": m.args[2], "passed": True, "elapsed": None})
    if rep.failed:
        entry["passed"] = False
    if rep.when == "call":
        for key, value in item.user_properties:
            if key == "elapsed":
                entry["elapsed"] = value


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        e = _RESULTS[number]
        status = "PASS" if e["passed"] else "FAIL"
        took = "n/a" if e["elapsed"] is None else f"{e['elapsed']:.2f} s"
        tr.write_line(f"criterion {number}: {status}  {e['title']}  ({took}, limit {e['limit']} s)")
