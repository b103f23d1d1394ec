import pytest

from ztriangle.resources.engine_config import CACHE_DIR_ENV, EngineConfig
from ztriangle.resources.primes import build_table
from ztriangle.ztriangle_core import ZTriangleCore


@pytest.fixture(autouse=True)
def no_prime_cache(monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)


@pytest.fixture(scope='session')
def table():
    return build_table(4096)


@pytest.fixture
def core():
    return ZTriangleCore(EngineConfig())
