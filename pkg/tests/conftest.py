import pytest

from app.services.basis_cache import BasisCacheStore


@pytest.fixture
def cache_store(tmp_path):
    return BasisCacheStore(path=str(tmp_path / "cache" / "basis_cache.json"), enabled=True)


@pytest.fixture
def cache_file(tmp_path, monkeypatch):
    """Point the CLI's default cache at a throwaway location"""
    from config import settings

    path = tmp_path / "cli_cache.json"
    monkeypatch.setattr(settings, "cache_path", str(path))
    return path
