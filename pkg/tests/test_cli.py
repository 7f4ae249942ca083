import json

import pytest

from app.routers import cli
from app.routers.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_kschur(capsys):
    code, out, _ = run(capsys, "expand", "kschur", "--index", "1,1,1", "--k", "2")
    assert code == 0
    document = json.loads(out)
    assert document["basis"] == "SCHUR"
    assert document["ring"] == "LAURENT_T"
    assert document["k"] == 2
    assert document["terms"] == [
        {"index": [2, 1], "coeff": {"t^1": "1"}},
        {"index": [1, 1, 1], "coeff": {"t^0": "1"}},
    ]
    assert document["metadata"]["tool"] == "kschur-filtration"


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "hall", "--index", "1,1", "--format", "text")
    assert code == 0
    assert out.strip() == "(t)*SCHUR[2] + (1)*SCHUR[1,1]"


def test_expand_at_t_one(capsys):
    code, out, _ = run(capsys, "expand", "hs", "--index", "2;1", "--t1", "--format", "text")
    assert code == 0
    assert out.strip() == "(1)*SCHUR[3] + (1)*SCHUR[2,1]"


def test_expand_macdonald_in_kschur(capsys):
    code, out, _ = run(capsys, "expand", "macdonald-h", "--index", "2,1", "--target", "kschur", "--k", "2")
    assert code == 0
    document = json.loads(out)
    assert document["basis"] == "KSCHUR"
    assert document["k"] == 2
    assert document["ring"] == "POLY_QT"
    assert {tuple(term["index"]): term["coeff"] for term in document["terms"]} == {
        (2, 1): {"q^0 t^0": "1"},
        (1, 1, 1): {"q^1 t^0": "1"},
    }


def test_expand_normalizes_the_index(capsys):
    code, out, _ = run(capsys, "expand", "hall", "--index", " 2, 1 ")
    assert code == 0
    document = json.loads(out)
    assert document["index"] == "2,1"
    assert document["basis"] == "SCHUR"
    assert [term["index"] for term in document["terms"]] == [[3], [2, 1]]


def test_expand_sequence_index(capsys):
    code, out, _ = run(capsys, "expand", "hs", "--index", "2; 1")
    assert code == 0
    assert json.loads(out)["index"] == "2;1"


def test_t_one_target_has_its_own_basis(capsys):
    code, out, _ = run(capsys, "expand", "hall", "--index", "1,1,1", "--target", "kschur", "--k", "2", "--t1")
    assert code == 0
    document = json.loads(out)
    assert document["basis"] == "KSCHUR_T1"
    assert document["k"] == 2


def test_not_in_subspace_exit_code(capsys):
    code, out, err = run(capsys, "expand", "hall", "--index", "3", "--target", "kschur", "--k", "2")
    assert code == 2
    assert out == ""
    assert json.loads(err.strip().splitlines()[-1])["error"] == "NotInSubspace"


@pytest.mark.parametrize(
    "argv",
    [
        ["expand", "kschur", "--index", "2,1"],
        ["expand", "macdonald-h", "--index", "2", "--t1"],
        ["expand", "hall", "--index", "2,x"],
        ["expand", "hall", "--index", "9"],
        ["verify", "--check", "tables", "--jobs", "0"],
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 3


def test_argument_errors_exit_code(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["expand", "nonsense"])
    assert excinfo.value.code == 3


def test_table(capsys, cache_file):
    code, out, _ = run(capsys, "table", "kschur-in-schur", "--k", "2", "--degree", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == '"1,1,1",1,t,0'
    assert cache_file.exists()


def test_table_without_cache(capsys, cache_file):
    code, out, _ = run(capsys, "table", "mach-in-kschur", "--k", "2", "--degree", "3", "--no-cache")
    assert code == 0
    document = json.loads(out)
    assert document["rows"] == ["1,1,1", "2,1"]
    assert not cache_file.exists()


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--check", "irreducible-count", "--k", "4")
    assert code == 0
    report = json.loads(out)
    assert report["theorem_failures"] == 0
    assert report["checks"][0]["summary"] == {"cases": 4, "PASS": 4}


def test_malformed_document_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "encode", lambda value: 5)
    code, out, err = run(capsys, "expand", "hall", "--index", "2")
    assert code == 3
    assert out == ""
    assert json.loads(err.strip().splitlines()[-1])["error"] == "InvalidInput"


def test_unexpected_errors_exit_code(capsys, monkeypatch):
    def crash(lam):
        raise RuntimeError("no luck")

    monkeypatch.setattr(cli.macdonald_service, "macdonald_h", crash)
    code, out, err = run(capsys, "expand", "macdonald-h", "--index", "2,2,2")
    assert code == cli.EXIT_INTERNAL_ERROR
    assert out == ""
    assert json.loads(err.strip().splitlines()[-1]) == {"error": "RuntimeError", "message": "no luck"}
