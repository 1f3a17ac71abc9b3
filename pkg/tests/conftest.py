import pytest

from breakeven.reference import reference_params

_criteria: dict[int, dict] = {}


@pytest.fixture
def ref():
    return reference_params()


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, text = marker.args
    entry = _criteria.setdefault(number, {"text": text, "passed": True, "tests": []})
    failed = call.excinfo is not None
    entry["passed"] = entry["passed"] and not failed
    entry["tests"].append((item.name, not failed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {entry['text']}")
        for name, ok in entry["tests"]:
            if not ok:
                terminalreporter.write_line(f"    failed: {name}")
