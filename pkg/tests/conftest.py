import re

import pytest
from hypothesis import settings

from ydlab import catalog
from ydlab.groupsys import cyclic
from ydlab.workspace import load_workspace

settings.register_profile("ydlab", max_examples=40, deadline=None)
settings.load_profile("ydlab")

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _CRITERION.match(item.name)
    if m is None or item.module.__name__.split(".")[-1] != "test_acceptance":
        return
    num, title = int(m.group(1)), m.group(2).replace("_", " ")
    ok = rep.passed if rep.when == "call" else not (rep.failed or rep.skipped)
    prev = _outcomes.get(num, (title, True))[1]
    _outcomes[num] = (title, prev and ok)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        title, ok = _outcomes[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def h4():
    return catalog.sweedler()


@pytest.fixture(scope="session")
def phi_neg1(h4):
    return catalog.sweedler_scaling(h4, -1, "phi_neg1")


@pytest.fixture(scope="session")
def s2(h4):
    return catalog.square_of_antipode(h4, "S2")


@pytest.fixture(scope="session")
def grouplike(h4):
    return catalog.sweedler_grouplike(h4)


@pytest.fixture(scope="session")
def qz2():
    return catalog.group_algebra(cyclic(2, "Z2"), "qz2")


@pytest.fixture(scope="session")
def sweedler_ws():
    return load_workspace("sweedler")


@pytest.fixture(scope="session")
def cyclic2_ws():
    return load_workspace("cyclic2")
