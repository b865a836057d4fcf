import pathlib

import pytest

from symnash import load_game, validate_network

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

_ACCEPTANCE: dict[str, str] = {}


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.json")


def load_fixture(name: str):
    g = load_game(fixture_path(name))
    return g, validate_network(g)


@pytest.fixture
def toggle():
    return load_fixture("toggle")


@pytest.fixture
def penny():
    return load_fixture("penny")


@pytest.fixture
def toggle_blind():
    return load_fixture("toggle_blind")


@pytest.fixture
def cards6():
    return load_fixture("cards6")


# One line per acceptance criterion at the end of the run, so the verdicts
# are readable without scrolling through the whole report.

@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(item.function, "_criterion", None)
    if label is None:
        return
    if report.when == "call":
        _ACCEPTANCE[label] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and (report.failed or report.skipped):
        _ACCEPTANCE[label] = "SKIP" if report.skipped else "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{_ACCEPTANCE[label]:4s}  criterion {label}")
