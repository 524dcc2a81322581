from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

# Exact arithmetic on trees is slow per example; keep runs short.
settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the large sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large sweeps, enabled with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def _isolated_env(tmp_path, monkeypatch):
    monkeypatch.setenv("WTREE_AUDIT_LOG", str(tmp_path / "audit.jsonl"))
    monkeypatch.setenv("WTREE_JOBS", "1")
    monkeypatch.delenv("WTREE_BUDGET", raising=False)
    monkeypatch.delenv("WTREE_SEED", raising=False)
