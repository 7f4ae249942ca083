import json
import os
from collections import defaultdict
from pathlib import Path
from typing import Dict, Optional

from pydantic import ValidationError

from app.models.coefficients import CoefficientRing, decode, encode
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.schemas.documents import CacheDocument
from app.services.kschur_service import kschur_service
from app.utils.errors import CacheCorrupted, KSchurError
from app.utils.logger import setup_logger
from config import settings

logger = setup_logger("basis_cache")


def _encode_expansion(f: SymExpansion) -> Dict:
    return {"ring": f.ring.value, "terms": {lam.to_text(): encode(c) for lam, c in f.sorted_terms()}}


def _decode_expansion(payload: Dict) -> SymExpansion:
    ring = CoefficientRing(payload["ring"])
    terms = {Partition.parse(index): decode(value, ring) for index, value in payload["terms"].items()}
    return SymExpansion(Basis.SCHUR, terms, ring)


class BasisCacheStore:
    """JSON file of SCHUR expansions of k-split and k-Schur functions, keyed by kind, k and degree"""

    def __init__(self, path: Optional[str] = None, enabled: Optional[bool] = None):
        self.path = Path(os.path.expanduser(path or settings.cache_path))
        self.enabled = settings.cache_enabled if enabled is None else enabled

    def _read(self) -> CacheDocument:
        try:
            document = CacheDocument.model_validate(json.loads(self.path.read_text()))
        except (OSError, ValueError, ValidationError) as e:
            raise CacheCorrupted("cache document is unreadable", {"path": str(self.path), "error": str(e)})
        if document.schema_version != settings.cache_schema_version:
            raise CacheCorrupted(
                "cache schema version mismatch",
                {"found": document.schema_version, "expected": settings.cache_schema_version},
            )
        return document

    def load(self) -> int:
        """Seed the k-Schur service; a corrupt cache is discarded, never trusted"""
        if not self.enabled or not self.path.exists():
            return 0
        try:
            document = self._read()
            seeded = []
            for key, group in document.entries.items():
                kind, k, _ = key.split("|")
                for index, payload in group.items():
                    seeded.append((kind, int(k), Partition.parse(index), _decode_expansion(payload)))
        except (KSchurError, KeyError, ValueError) as e:
            logger.log_warning("Discarding basis cache", path=str(self.path), error=str(e))
            return 0

        for kind, k, lam, expansion in seeded:
            kschur_service.seed(kind, k, lam, expansion)
        logger.log_info("Basis cache loaded", path=str(self.path), entries=len(seeded))
        return len(seeded)

    def save(self) -> int:
        if not self.enabled:
            return 0
        groups: Dict[str, Dict[str, Dict]] = defaultdict(dict)
        count = 0
        for kind, k, lam, expansion in kschur_service.cached_entries():
            groups[f"{kind}|{k}|{lam.degree}"][lam.to_text()] = _encode_expansion(expansion)
            count += 1
        document = CacheDocument(
            schema_version=settings.cache_schema_version,
            entries={key: dict(sorted(groups[key].items())) for key in sorted(groups)},
        )
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            staging = self.path.with_suffix(".tmp")
            staging.write_text(json.dumps(document.model_dump(mode="json"), indent=2))
            staging.replace(self.path)
        except OSError as e:
            logger.log_warning("Could not write basis cache", path=str(self.path), error=str(e))
            return 0
        logger.log_info("Basis cache saved", path=str(self.path), entries=count)
        return count
