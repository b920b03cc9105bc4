import pathlib

import pytest

from herbrandfi.proofformat import parse_proof_file

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def load(name):
    return parse_proof_file((CORPUS / name).read_text(encoding="utf-8"))


@pytest.fixture
def corpus():
    return load


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: end-to-end acceptance criteria")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_c" in report.nodeid:
        detail = dict(report.user_properties).get("detail", "")
        name = report.nodeid.split("::")[-1]
        _reports.append((name, report.outcome, detail))


_reports = []


def pytest_terminal_summary(terminalreporter):
    if not _reports:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _reports:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status} {name}: {detail}")
