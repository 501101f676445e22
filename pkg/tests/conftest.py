import pytest

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--run-large", action="store_true", default=False,
                     help="also run q = 4, 5 of the 1170 question and the depth-1170 search")


def pytest_configure(config):
    config.addinivalue_line("markers", "large: very slow optional runs (enable with --run-large)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-large"):
        return
    skip = pytest.mark.skip(reason="needs --run-large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    _CRITERIA[number] = (title, passed, state["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, detail = _CRITERIA[number]
        line = f"[{'PASS' if passed else 'FAIL'}] {number}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
