import csv
import io
import json
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from app.models.coefficients import CoefficientRing, parse_coefficient
from app.processors.partition_combinatorics import partitions_of
from app.schemas.documents import TableDocument
from app.services.kschur_service import kschur_service
from app.services.macdonald_service import macdonald_service
from app.utils.errors import InvalidInput
from app.utils.logger import setup_logger
from config import settings

logger = setup_logger("table_service")

KSCHUR_IN_SCHUR = "kschur-in-schur"
MACH_IN_KSCHUR = "mach-in-kschur"
TABLE_KINDS = (KSCHUR_IN_SCHUR, MACH_IN_KSCHUR)

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "fixtures" / "tables.json"

_ENTRY_RING = {KSCHUR_IN_SCHUR: CoefficientRing.LAURENT_T, MACH_IN_KSCHUR: CoefficientRing.POLY_QT}


class FixtureTable(TableDocument):
    source: str = ""


class FixtureFile(BaseModel):
    description: str = ""
    tables: List[FixtureTable]


class TableService:
    """Coefficient matrices of k-Schur functions and of Macdonald H in the k-Schur basis"""

    def __init__(self, fixture_path: Path = FIXTURE_PATH):
        self.fixture_path = fixture_path
        self._fixtures: Optional[Dict[Tuple[str, int, int], FixtureTable]] = None

    def build_table(self, kind: str, k: int, degree: int) -> TableDocument:
        if kind not in TABLE_KINDS:
            raise InvalidInput(f"unknown table kind {kind!r}", {"allowed": list(TABLE_KINDS)})
        if k < 1:
            raise InvalidInput(f"k must be positive, got {k}")
        if not 0 <= degree <= settings.max_degree:
            raise InvalidInput(f"degree {degree} outside 0..{settings.max_degree}")

        rows = partitions_of(degree, k)
        logger.log_info("Building table", kind=kind, k=k, degree=degree, rows=len(rows))
        if kind == KSCHUR_IN_SCHUR:
            columns = partitions_of(degree)
            entries = []
            for lam in rows:
                expansion = kschur_service.k_schur(k, lam)
                entries.append([str(expansion.coefficient(mu)) for mu in columns])
        else:
            columns = rows
            entries = []
            for lam in rows:
                coefficients = macdonald_service.kschur_qt_kostka(k, lam)
                entries.append([str(coefficients[mu]) if mu in coefficients else "0" for mu in columns])

        return TableDocument(
            kind=kind,
            k=k,
            degree=degree,
            rows=[lam.to_text() for lam in rows],
            columns=[mu.to_text() for mu in columns],
            entries=entries,
        )

    def fixtures(self) -> Dict[Tuple[str, int, int], FixtureTable]:
        if self._fixtures is None:
            document = FixtureFile.model_validate(json.loads(self.fixture_path.read_text()))
            self._fixtures = {(table.kind, table.k, table.degree): table for table in document.tables}
        return self._fixtures

    def fixture(self, kind: str, k: int, degree: int) -> Optional[FixtureTable]:
        return self.fixtures().get((kind, k, degree))

    def compare(self, computed: TableDocument, expected: TableDocument) -> List[Dict[str, str]]:
        """Entrywise mismatches between two tables of the same kind, compared as ring elements"""
        ring = _ENTRY_RING[computed.kind]
        if computed.rows != expected.rows or computed.columns != expected.columns:
            return [{"mismatch": "labels", "rows": ",".join(computed.rows), "columns": ",".join(computed.columns)}]
        mismatches = []
        for row, got_row, want_row in zip(computed.rows, computed.entries, expected.entries):
            for column, got, want in zip(computed.columns, got_row, want_row):
                if parse_coefficient(got, ring) != parse_coefficient(want, ring):
                    mismatches.append({"row": row, "column": column, "computed": got, "expected": want})
        return mismatches


def render_csv(document: TableDocument) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"k={document.k}"] + document.columns)
    for label, row in zip(document.rows, document.entries):
        writer.writerow([label] + row)
    return buffer.getvalue()


def render_text(document: TableDocument) -> str:
    """Aligned plain-text grid; zero entries are left blank"""
    header = [f"k={document.k}"] + document.columns
    body = [
        [label] + ["" if entry == "0" else entry for entry in row]
        for label, row in zip(document.rows, document.entries)
    ]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    lines = [" | ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in [header] + body]
    lines.insert(1, "-+-".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


table_service = TableService()
