import pytest

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        status = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{name}: {status}")


@pytest.fixture(scope="session")
def b2():
    from peterson.rootdata import build_diagram
    return build_diagram("B2")


@pytest.fixture(scope="session")
def b3():
    from peterson.rootdata import build_diagram
    return build_diagram("B3")
