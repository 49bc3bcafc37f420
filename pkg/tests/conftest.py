from functools import lru_cache

import pytest
from hypothesis import settings

from chevorbits.parametrizer import Options, parametrize, parametrize_subquotient
from chevorbits.rootdata import build_root_system, descending_central_indices
from chevorbits.zform import build_bracket_table

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@lru_cache(maxsize=None)
def datum_and_table(type_label, rank):
    d = build_root_system(type_label, rank)
    return d, build_bracket_table(d)


@lru_cache(maxsize=None)
def cached_param(type_label, rank, normalize=True, substitute=True, level=None):
    d, t = datum_and_table(type_label, rank)
    opts = Options(normalize=normalize, substitute=substitute)
    if level is None:
        return parametrize(d, t, opts)
    return parametrize_subquotient(d, t, descending_central_indices(d, level), options=opts)


@pytest.fixture
def build():
    return datum_and_table


@pytest.fixture
def param():
    return cached_param


ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    records = []

    def declare(number, title):
        records.append((number, title))

    yield declare
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    for number, title in records:
        prev = ACCEPTANCE_LINES.get(number)
        ok = not failed and (prev is None or prev[1])
        ACCEPTANCE_LINES[number] = (title, ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        title, ok = ACCEPTANCE_LINES[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
