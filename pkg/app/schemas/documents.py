import re
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, field_validator

from config import settings

_PARTITION_TEXT = re.compile(r"^(\d+(,\d+)*)?$")
_SEQUENCE_TEXT = re.compile(r"^(\d+(,\d+)*)?(;(\d+(,\d+)*)?)*$")

PASS = "PASS"
FAIL = "FAIL"
HOLDS = "HOLDS"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
ERROR = "ERROR"
VERDICTS = (PASS, FAIL, HOLDS, COUNTEREXAMPLE, ERROR)

THEOREM = "theorem"
CONJECTURE = "conjecture"


def _partition_text(value: str) -> str:
    if not _PARTITION_TEXT.match(value):
        raise ValueError(f"not a partition: {value!r}")
    return value


class DocumentMetadata(BaseModel):
    """Header of every emitted document; carries no timestamps"""

    tool: str = settings.app_name
    version: str = settings.version


class TermSchema(BaseModel):
    """One term; ``coeff`` is the ring encoding of the coefficient"""

    index: List[int]
    coeff: Union[str, Dict[str, Any]]

    @field_validator("index")
    @classmethod
    def validate_index(cls, v):
        if any(part <= 0 for part in v) or v != sorted(v, reverse=True):
            raise ValueError(f"not a partition: {v!r}")
        return v


class ExpansionDocument(BaseModel):
    metadata: DocumentMetadata = DocumentMetadata()
    object: str
    index: str
    k: Optional[int] = None
    basis: str
    ring: str
    terms: List[TermSchema]

    @field_validator("index")
    @classmethod
    def validate_index(cls, v):
        if not _SEQUENCE_TEXT.match(v):
            raise ValueError(f"not a partition or partition sequence: {v!r}")
        return v


class TableDocument(BaseModel):
    """Coefficient matrix; entries are coefficient texts, rows by columns"""

    metadata: DocumentMetadata = DocumentMetadata()
    kind: str
    k: int
    degree: int
    rows: List[str]
    columns: List[str]
    entries: List[List[str]]

    @field_validator("rows", "columns")
    @classmethod
    def validate_labels(cls, v):
        return [_partition_text(label) for label in v]


class CaseResult(BaseModel):
    case: str
    verdict: str
    detail: Dict[str, Any] = {}

    @field_validator("verdict")
    @classmethod
    def validate_verdict(cls, v):
        if v not in VERDICTS:
            raise ValueError(f"unknown verdict {v!r}")
        return v


class CheckReport(BaseModel):
    check: str
    kind: str
    k: Optional[int] = None
    max_degree: Optional[int] = None
    cases: List[CaseResult] = []
    summary: Dict[str, Any] = {}

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v):
        if v not in (THEOREM, CONJECTURE):
            raise ValueError(f"unknown check kind {v!r}")
        return v

    @property
    def theorem_failed(self) -> bool:
        return self.kind == THEOREM and any(case.verdict in (FAIL, ERROR) for case in self.cases)

    @property
    def counterexamples(self) -> int:
        return sum(1 for case in self.cases if case.verdict == COUNTEREXAMPLE)


class VerificationReport(BaseModel):
    metadata: DocumentMetadata = DocumentMetadata()
    checks: List[CheckReport]
    theorem_failures: int = 0
    conjecture_counterexamples: int = 0


class CacheDocument(BaseModel):
    """Persistent SCHUR expansions keyed by ``kind|k|index``"""

    schema_version: int
    entries: Dict[str, Dict[str, Any]] = {}
