"""Shared fixtures: isolated settings and a throwaway estimate cache"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.utils.cache import EstimateCache, set_cache
from src.utils.config import reset_settings


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long Monte Carlo acceptance runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Fresh settings per test, no environment overrides and a private cache"""
    for var in ('BETAGAP_THREADS', 'BETAGAP_CACHE_DIR', 'BETAGAP_CONFIG', 'LOG_LEVEL', 'LOG_FORMAT'):
        monkeypatch.delenv(var, raising=False)
    reset_settings()
    set_cache(EstimateCache(str(tmp_path / "cache"), enabled=False))
    yield
    reset_settings()
    set_cache(None)
