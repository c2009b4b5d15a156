"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

import pytest

CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    entry = CRITERIA.setdefault(number, {"title": title, "ok": True, "ran": False, "notes": []})
    if rep.when == "call":
        entry["ran"] = True
    if rep.failed:
        entry["ok"] = False
        entry["notes"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        e = CRITERIA[number]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        line = f"criterion {number:2d}: {status}  {e['title']}"
        if e["notes"]:
            line += f"  (failed: {', '.join(e['notes'])})"
        terminalreporter.write_line(line)
