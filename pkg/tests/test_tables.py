import pytest

from app.services.table_service import (
    KSCHUR_IN_SCHUR,
    MACH_IN_KSCHUR,
    render_csv,
    render_text,
    table_service,
)
from app.utils.errors import InvalidInput


@pytest.mark.parametrize(
    "kind, k, degree",
    [
        (KSCHUR_IN_SCHUR, 2, 3),
        (KSCHUR_IN_SCHUR, 2, 4),
        (KSCHUR_IN_SCHUR, 2, 5),
        (KSCHUR_IN_SCHUR, 3, 4),
        (KSCHUR_IN_SCHUR, 3, 5),
        (KSCHUR_IN_SCHUR, 3, 6),
        (KSCHUR_IN_SCHUR, 4, 5),
        (KSCHUR_IN_SCHUR, 4, 6),
        (MACH_IN_KSCHUR, 2, 3),
        (MACH_IN_KSCHUR, 2, 4),
        (MACH_IN_KSCHUR, 2, 5),
        (MACH_IN_KSCHUR, 2, 6),
        (MACH_IN_KSCHUR, 3, 4),
        (MACH_IN_KSCHUR, 3, 5),
        (MACH_IN_KSCHUR, 4, 5),
    ],
)
def test_tables_match_published_values(kind, k, degree):
    expected = table_service.fixture(kind, k, degree)
    assert expected is not None
    computed = table_service.build_table(kind, k, degree)
    assert table_service.compare(computed, expected) == []


def test_fixture_inventory():
    keys = set(table_service.fixtures())
    assert (KSCHUR_IN_SCHUR, 4, 6) in keys
    assert (MACH_IN_KSCHUR, 2, 6) in keys
    assert table_service.fixture(KSCHUR_IN_SCHUR, 9, 9) is None


def test_table_layout():
    document = table_service.build_table(KSCHUR_IN_SCHUR, 2, 3)
    assert document.rows == ["1,1,1", "2,1"]
    assert document.columns == ["1,1,1", "2,1", "3"]
    assert document.entries == [["1", "t", "0"], ["0", "1", "t"]]
    assert document.metadata.tool


def test_compare_reports_mismatches():
    computed = table_service.build_table(KSCHUR_IN_SCHUR, 2, 3)
    altered = computed.model_copy(update={"entries": [["1", "t^2", "0"], ["0", "1", "t"]]})
    assert table_service.compare(computed, altered) == [
        {"row": "1,1,1", "column": "2,1", "computed": "t", "expected": "t^2"}
    ]


@pytest.mark.parametrize(
    "kind, k, degree",
    [("kschur-in-monomial", 2, 3), (KSCHUR_IN_SCHUR, 0, 3), (KSCHUR_IN_SCHUR, 2, 99), (KSCHUR_IN_SCHUR, 2, -1)],
)
def test_invalid_tables(kind, k, degree):
    with pytest.raises(InvalidInput):
        table_service.build_table(kind, k, degree)


def test_renderers():
    document = table_service.build_table(KSCHUR_IN_SCHUR, 2, 3)
    assert render_csv(document) == 'k=2,"1,1,1","2,1",3\n"1,1,1",1,t,0\n"2,1",0,1,t\n'
    text = render_text(document).splitlines()
    assert text[0].split(" | ")[0].strip() == "k=2"
    assert set(text[1]) <= {"-", "+"}
    assert len(text) == 4
