import json

from app.models.partition import Partition
from app.services.basis_cache import BasisCacheStore
from app.services.kschur_service import KSCHUR, KSPLIT, kschur_service
from tests.helpers import P


def test_save_and_reload(cache_store):
    kschur_service.k_schur(2, P("1,1,1"))
    kschur_service.k_split_poly(2, P("2,1"))
    saved = cache_store.save()
    assert saved >= 2

    document = json.loads(cache_store.path.read_text())
    assert document["schema_version"] == 1
    assert "kschur|2|3" in document["entries"]
    assert document["entries"]["kschur|2|3"]["1,1,1"]["ring"] == "LAURENT_T"
    assert document["entries"]["ksplit|2|3"]["2,1"]["terms"]["3"] == {"t^1": "1"}

    assert cache_store.load() == saved


def test_loaded_entries_seed_the_service(cache_store):
    cache_store.path.parent.mkdir(parents=True)
    cache_store.path.write_text(
        json.dumps(
            {
                "schema_version": 1,
                "entries": {
                    "kschur|11|1": {"1": {"ring": "LAURENT_T", "terms": {"1": {"t^0": "1"}}}},
                },
            }
        )
    )
    assert cache_store.load() == 1
    assert (KSCHUR, 11, Partition([1])) in {(kind, k, lam) for kind, k, lam, _ in kschur_service.cached_entries()}


def test_corrupt_cache_is_discarded(cache_store):
    cache_store.path.parent.mkdir(parents=True)
    cache_store.path.write_text("{not json")
    assert cache_store.load() == 0


def test_foreign_schema_is_discarded(cache_store):
    cache_store.path.parent.mkdir(parents=True)
    cache_store.path.write_text(json.dumps({"schema_version": 99, "entries": {}}))
    assert cache_store.load() == 0


def test_malformed_entry_is_discarded(cache_store):
    cache_store.path.parent.mkdir(parents=True)
    cache_store.path.write_text(
        json.dumps({"schema_version": 1, "entries": {f"{KSPLIT}|2|3": {"3,2,x": {"ring": "INT", "terms": {}}}}})
    )
    assert cache_store.load() == 0


def test_disabled_store_does_nothing(tmp_path):
    store = BasisCacheStore(path=str(tmp_path / "off.json"), enabled=False)
    assert store.save() == 0
    assert store.load() == 0
    assert not (tmp_path / "off.json").exists()


def test_missing_file_loads_nothing(cache_store):
    assert cache_store.load() == 0
