"""
Общие фикстуры: рабочие пространства при (p, n) = (2, 2) и (7, 1).

Исчерпывающие проверки при q = 7 помечены slow и запускаются с --runslow.
"""
import pytest

from gl3trace.services.gf_tower_service import build_field
from gl3trace.services.ledger_service import create_ledger
from gl3trace.services.workspace_service import open_workspace


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run exhaustive q=7 checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive enumeration, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def ws4():
    """F_2 ⊂ F_4 ⊂ F_64, Γ = GL3(F_2)."""
    return open_workspace(2, 2)


@pytest.fixture(scope="session")
def ws7():
    """F_7 ⊂ F_343, Γ = G = GL3(F_7)."""
    return open_workspace(7, 1)


@pytest.fixture(scope="session")
def f4():
    return build_field(2, 2, with_tower=False)


@pytest.fixture(scope="session")
def f7():
    return build_field(7, 1, with_tower=False)


@pytest.fixture
def ledger():
    return create_ledger()
