import pytest

from skewrank.groups import build_family, family_spec

_CACHE = {}


def group(kind, **params):
    spec = family_spec(kind, **params)
    if spec not in _CACHE:
        _CACHE[spec] = build_family(spec)
    return _CACHE[spec]


@pytest.fixture
def grp():
    return group


# -- acceptance reporting -------------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or rep.failed:
        ok = _CRITERIA.get(number, (title, True))[1]
        _CRITERIA[number] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}")
