import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import synth  # noqa: E402

_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        title, prev = _criteria.get(n, (title, "PASS"))
        _criteria[n] = (title, "PASS" if rep.passed and prev == "PASS" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status = _criteria[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title}")


@pytest.fixture
def gazetteer_file(tmp_path):
    path = tmp_path / "genes.txt"
    path.write_text("\n".join(synth.gazetteer_lines()) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def headline_gazetteer(tmp_path):
    path = tmp_path / "headline.txt"
    path.write_text("Huntington's disease protein\np53\nCREB-binding protein\n", encoding="utf-8")
    return path
