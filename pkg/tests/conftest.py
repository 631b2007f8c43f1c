import pytest

from fiqhkit.datafiles import DataRegistry


@pytest.fixture(scope="session")
def registry():
    return DataRegistry()


@pytest.fixture(scope="session")
def taymammum(registry):
    return registry.spaces["taymammum"]


@pytest.fixture(scope="session")
def tahara(registry):
    return registry.rulebases["tahara"]


@pytest.fixture(scope="session")
def wudu_shafii(registry):
    return registry.automata["wudu-shafii"]


@pytest.fixture(scope="session")
def wudu_hanafi(registry):
    return registry.automata["wudu-hanafi"]
