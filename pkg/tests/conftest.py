import pytest

from sll.corpus import load_model


@pytest.fixture
def fig1():
    return load_model("fig1")


@pytest.fixture
def fig2():
    return load_model("fig2").model


@pytest.fixture
def fig3():
    return load_model("fig3").model


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL",
                              props.get("title", "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, verdict, title in sorted(lines):
            terminalreporter.write_line(f"criterion {num:>2}: {verdict}  {title}")
