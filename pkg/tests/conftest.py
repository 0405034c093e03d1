import re

import pytest

_CRITERIA = {}
_NOTES = {}


@pytest.fixture
def acceptance_note(request):
    """Attach a free-form report line to the current criterion."""
    def note(text):
        _NOTES[request.node.name] = text
    return note


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        prev = _CRITERIA.get(key)
        if prev != "FAIL":
            _CRITERIA[key] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, slug), status in sorted(_CRITERIA.items()):
        line = f"criterion {num:2d} {slug.replace('_', ' ')}: {status}"
        note = _NOTES.get(f"test_criterion_{num}_{slug}")
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)
