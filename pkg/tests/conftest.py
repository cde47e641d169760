import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FROZEN = Path(__file__).with_name("data") / "frozen.json"
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def frozen():
    return json.loads(FROZEN.read_text())


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, whatever the outcome."""
    record = {"id": None, "detail": ""}

    def register(cid: int, title: str):
        record["id"], record["title"] = cid, title
        return record

    yield register
    if record["id"] is None:
        return
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"criterion {record['id']}: {'PASS' if ok else 'FAIL'}  {record['title']}"
    if record["detail"]:
        line += f"  [{record['detail']}]"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
