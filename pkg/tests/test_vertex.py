import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.models.coefficients import T_TO_ONE, CoefficientRing
from app.models.expansion import Basis, SymExpansion
from app.models.partition import PartitionSequence
from app.processors.basis_converter import basis_converter
from app.processors.littlewood_richardson import lr_processor
from app.processors.partition_combinatorics import k_split
from app.services.vertex_service import morris_service, vertex_service
from app.utils.errors import UnsupportedConversion
from tests.helpers import P, k_bounded, lt, partitions, schur

ONE = SymExpansion.one(Basis.SCHUR, CoefficientRing.LAURENT_T)


def test_b_ell_on_one():
    assert vertex_service.b_ell(2, ONE) == schur({"2": 1}, CoefficientRing.LAURENT_T)
    assert vertex_service.b_ell(0, ONE) == ONE
    assert not vertex_service.b_ell(-1, ONE)


def test_b_ell_needs_schur():
    with pytest.raises(UnsupportedConversion):
        vertex_service.b_ell(1, SymExpansion.monomial(Basis.H, P("1")))


@settings(max_examples=30, deadline=None)
@given(partitions(max_degree=5), st.integers(min_value=0, max_value=3))
def test_b_ell_raises_degree_by_ell(lam, ell):
    image = vertex_service.b_ell(ell, SymExpansion.monomial(Basis.SCHUR, lam, lt("1")))
    assert image.degrees() in ([], [lam.degree + ell])


def test_plethystic_row():
    assert vertex_service.plethystic_row(1) == schur({"1": "t - 1"})


@pytest.mark.parametrize(
    "index, expected",
    [
        ("1", {"1": "1"}),
        ("1,1", {"1,1": "1", "2": "t"}),
        ("2,1", {"2,1": "1", "3": "t"}),
        ("1,1,1", {"1,1,1": "1", "2,1": "t + t^2", "3": "t^3"}),
    ],
)
def test_hall_littlewood(index, expected):
    assert vertex_service.hall_littlewood(P(index)) == schur(expected)


def test_hall_littlewood_at_t_one_is_h():
    for lam in (P("2,1,1"), P("3,2"), P("2,2,1")):
        at_one = vertex_service.hall_littlewood(lam).specialize_t(T_TO_ONE)
        assert at_one == basis_converter.h_to_schur(lam)


def test_root_expansion():
    assert vertex_service.root_expansion((2, 1)) == {(2, 1): 1, (3, 0): lt("-t")}


def test_b_lambda_on_one_is_schur():
    for lam in (P("2,1"), P("2,2"), P("3,1,1")):
        assert vertex_service.b_lambda(lam, ONE) == SymExpansion.monomial(Basis.SCHUR, lam, lt("1"))


@pytest.mark.parametrize("m, n", [(1, 1), (2, 1), (1, 2), (3, 0), (0, 2), (2, -1)])
def test_commutation_relation(m, n):
    f = schur({"1": "1", "2": "t"})
    b = vertex_service.b_ell
    left = b(m, b(n, f))
    right = (
        b(n, b(m, f)).scale(lt("t"))
        + b(m + 1, b(n - 1, f)).scale(lt("t"))
        - b(n - 1, b(m + 1, f))
    )
    assert left == right


def test_generalized_schur_product():
    sequence = PartitionSequence.parse("2;1")
    assert vertex_service.h_s(sequence) == schur({"2,1": "1", "3": "t"})
    assert vertex_service.h_s(PartitionSequence.parse("2;;1")) == vertex_service.h_s(sequence)


def test_generalized_product_at_t_one():
    sequence = PartitionSequence.parse("2,1;1,1")
    product = lr_processor.schur_multiply(
        SymExpansion.monomial(Basis.SCHUR, P("2,1")), SymExpansion.monomial(Basis.SCHUR, P("1,1"))
    )
    assert vertex_service.h_s(sequence).specialize_t(T_TO_ONE) == product


def test_hall_littlewood_basis():
    s11 = SymExpansion.monomial(Basis.SCHUR, P("1,1"))
    expansion = basis_converter.to_basis(s11, Basis.HL)
    assert expansion.basis == Basis.HL
    assert dict(expansion.terms) == {P("1,1"): 1, P("2"): lt("-t")}
    assert basis_converter.to_schur(expansion) == s11.widen(CoefficientRing.LAURENT_T)


def test_morris_kostka():
    assert morris_service.morris_kostka(PartitionSequence.parse("2;1")) == {P("2,1"): 1, P("3"): lt("t")}
    assert morris_service.morris_kostka(PartitionSequence.parse("")) == {P(""): 1}


@settings(max_examples=30, deadline=None)
@given(k_bounded(max_k=4, max_degree=6))
def test_morris_recurrence_matches_vertex_operators(case):
    k, lam = case
    sequence = k_split(lam, k)
    vertex = vertex_service.h_s(sequence)
    oracle = morris_service.morris_kostka(sequence)
    assert set(vertex) == set(oracle)
    assert all(vertex.coefficient(mu) == oracle[mu] for mu in oracle)
