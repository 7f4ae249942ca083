import pytest
from hypothesis import given, settings

from app.models.coefficients import CoefficientRing, LaurentT, RatQT
from app.models.expansion import Basis, SymExpansion
from app.processors.basis_converter import basis_converter, concat_product
from app.processors.littlewood_richardson import PIERI_E, PIERI_H, lr_processor
from app.processors.partition_combinatorics import conjugate, partitions_of
from app.processors.plethysm import (
    HALL,
    MINUS_X,
    QT,
    T_TIMES_X,
    X_OVER_ONE_MINUS_T,
    X_TIMES_ONE_MINUS_T,
    X_TIMES_T_MINUS_ONE,
    plethysm_processor,
    z_lambda,
)
from app.utils.errors import NotKBounded, UnsupportedConversion, UnsupportedRing
from tests.helpers import P, lt, partitions, qt, schur


def s(index: str) -> SymExpansion:
    return SymExpansion.monomial(Basis.SCHUR, P(index))


def test_expansion_drops_zero_terms():
    f = SymExpansion(Basis.SCHUR, {P("2"): 0, P("1,1"): 3})
    assert list(f) == [P("1,1")]
    assert f.coefficient(P("2")) == 0
    assert (f - f).to_text() == "0"


def test_expansion_ring_detection():
    f = SymExpansion(Basis.SCHUR, {P("2"): lt("t"), P("1,1"): 1})
    assert f.ring == CoefficientRing.LAURENT_T
    with pytest.raises(UnsupportedRing):
        SymExpansion(Basis.SCHUR, {P("2"): lt("t")}, CoefficientRing.INT)


def test_k_indexed_expansions_are_bounded():
    with pytest.raises(NotKBounded):
        SymExpansion(Basis.KSCHUR, {P("3"): 1}, k=2)
    with pytest.raises(UnsupportedConversion):
        SymExpansion(Basis.KSCHUR, {P("1"): 1})


def test_bases_do_not_mix():
    with pytest.raises(UnsupportedConversion):
        s("1") + SymExpansion.monomial(Basis.H, P("1"))


def test_sorted_terms():
    f = schur({"1": 1, "2,1": 2, "3": 5}, CoefficientRing.INT)
    assert [lam for lam, _ in f.sorted_terms()] == [P("3"), P("2,1"), P("1")]


def test_lr_products():
    assert lr_processor.lr_product(P("1"), P("1")) == {P("2"): 1, P("1,1"): 1}
    square = lr_processor.lr_product(P("2,1"), P("2,1"))
    assert square == {
        P("4,2"): 1,
        P("4,1,1"): 1,
        P("3,3"): 1,
        P("3,2,1"): 2,
        P("3,1,1,1"): 1,
        P("2,2,2"): 1,
        P("2,2,1,1"): 1,
    }
    assert lr_processor.lr_coefficient(P("3,2,1"), P("2,1"), P("2,1")) == 2


def test_schur_multiply_with_t_coefficients():
    f = schur({"1": "1 + t"})
    product = lr_processor.schur_multiply(f, s("1"))
    assert product == schur({"2": "1 + t", "1,1": "1 + t"})


def test_pieri():
    assert lr_processor.pieri(s("1"), 2, PIERI_E) == schur({"2,1": 1, "1,1,1": 1}, CoefficientRing.INT)
    assert lr_processor.pieri(s("1"), 2, PIERI_H) == schur({"3": 1, "2,1": 1}, CoefficientRing.INT)
    assert not lr_processor.pieri(s("1"), -1)


def test_skew():
    assert lr_processor.skew(P("1"), s("2,1")) == schur({"2": 1, "1,1": 1}, CoefficientRing.INT)
    assert not lr_processor.skew(P("3"), s("2,1"))


def test_coproduct():
    assert lr_processor.coproduct(P("1,1")) == {
        (P(""), P("1,1")): 1,
        (P("1"), P("1")): 1,
        (P("1,1"), P("")): 1,
    }


def test_classical_conversions():
    assert basis_converter.h_to_schur(P("2,1")) == schur({"3": 1, "2,1": 1}, CoefficientRing.INT)
    assert basis_converter.schur_to_h(P("1,1")) == SymExpansion(Basis.H, {P("1,1"): 1, P("2"): -1})
    assert basis_converter.m_to_schur(P("1,1")) == s("1,1")
    assert basis_converter.m_to_schur(P("2")) == schur({"2": 1, "1,1": -1}, CoefficientRing.INT)
    assert basis_converter.p_to_h(P("2")) == SymExpansion(Basis.H, {P("2"): 2, P("1,1"): -1})
    assert basis_converter.kostka(P("2,1"), P("1,1,1")) == 2


def test_power_sums_through_schur():
    p2 = SymExpansion.monomial(Basis.P, P("2"))
    assert basis_converter.to_schur(p2) == schur({"2": 1, "1,1": -1}, CoefficientRing.INT)
    h2 = basis_converter.to_basis(s("2"), Basis.P)
    assert h2.coefficient(P("2")) == RatQT(1, 2)
    assert h2.coefficient(P("1,1")) == RatQT(1, 2)


def test_concat_product():
    product = concat_product(SymExpansion.monomial(Basis.H, P("2")), SymExpansion.monomial(Basis.H, P("3,1")))
    assert list(product) == [P("3,2,1")]
    with pytest.raises(UnsupportedConversion):
        concat_product(s("1"), s("1"))


@settings(max_examples=25, deadline=None)
@given(partitions(max_degree=5))
@pytest.mark.parametrize("target", [Basis.H, Basis.E, Basis.M, Basis.P])
def test_conversion_round_trip(target, lam):
    original = SymExpansion.monomial(Basis.SCHUR, lam)
    there = basis_converter.to_basis(original, target)
    assert basis_converter.to_schur(there) == original


def test_z_lambda():
    assert z_lambda(P("2,1,1")) == 4
    assert z_lambda(P("3")) == 3


def test_hall_scalar():
    assert plethysm_processor.scalar(s("2,1"), s("2,1"), HALL) == 1
    h21 = SymExpansion.monomial(Basis.H, P("2,1"))
    m21 = SymExpansion.monomial(Basis.M, P("2,1"))
    assert plethysm_processor.scalar(h21, m21, HALL) == 1


def test_qt_scalar():
    p2 = SymExpansion.monomial(Basis.P, P("2"))
    assert plethysm_processor.scalar(p2, p2, QT) == RatQT(qt("2 - 2*q^2"), qt("1 - t^2"))
    p11 = SymExpansion.monomial(Basis.P, P("1,1"))
    assert plethysm_processor.scalar(p2, p11, QT) == 0
    with pytest.raises(UnsupportedRing):
        plethysm_processor.scalar(p2, p2, "euclid")


def test_plethysm():
    scaled = plethysm_processor.plethystic_substitute(s("1"), X_TIMES_T_MINUS_ONE)
    assert scaled == schur({"1": "t - 1"})
    assert plethysm_processor.plethystic_substitute(s("2"), MINUS_X) == s("1,1")
    assert plethysm_processor.plethystic_substitute(s("2,1"), MINUS_X) == -s("2,1")
    over = plethysm_processor.plethystic_substitute(s("1"), X_OVER_ONE_MINUS_T)
    assert over.ring == CoefficientRing.RAT_QT
    assert over.coefficient(P("1")) == RatQT(1, qt("1 - t"))


def test_sign_substitution_is_an_involution():
    f = schur({"2,1": 1, "3": 2, "1,1,1": -1}, CoefficientRing.INT)
    twice = plethysm_processor.plethystic_substitute(plethysm_processor.plethystic_substitute(f, MINUS_X), MINUS_X)
    assert twice == f


def test_omega():
    assert plethysm_processor.omega(s("3")) == s("1,1,1")
    assert plethysm_processor.omega(s("2,1")) == s("2,1")
    h2 = SymExpansion.monomial(Basis.H, P("2"))
    assert plethysm_processor.omega(h2) == SymExpansion.monomial(Basis.E, P("2"))


def test_twisted_omega():
    f = schur({"2": "t", "1,1": "1 + t^2"})
    assert plethysm_processor.omega(f, twisted=True) == schur({"1,1": "t^-1", "2": "1 + t^-2"})


@given(partitions(max_degree=6))
def test_omega_is_an_involution(lam):
    f = SymExpansion.monomial(Basis.SCHUR, lam, LaurentT.monomial(2))
    assert plethysm_processor.omega(plethysm_processor.omega(f, True), True) == f
    assert plethysm_processor.omega(SymExpansion.monomial(Basis.SCHUR, lam)) == SymExpansion.monomial(
        Basis.SCHUR, conjugate(lam)
    )


@settings(max_examples=30, deadline=None)
@given(partitions(max_degree=4), partitions(max_degree=4))
def test_schur_multiply_matches_h_basis_path(lam, mu):
    left, right = SymExpansion.monomial(Basis.SCHUR, lam), SymExpansion.monomial(Basis.SCHUR, mu)
    direct = lr_processor.schur_multiply(left, right)
    via_h = concat_product(
        basis_converter.to_basis(left, Basis.H),
        basis_converter.to_basis(right, Basis.H),
    )
    assert basis_converter.to_schur(via_h) == direct


@pytest.mark.parametrize("lam", [P("2,1"), P("2,2"), P("3,2,1"), P("2,2,1,1"), P("4,2")])
def test_coproduct_is_dual_to_multiplication(lam):
    coproduct = lr_processor.coproduct(lam)
    for size in range(lam.degree + 1):
        for mu in partitions_of(size):
            for nu in partitions_of(lam.degree - size):
                assert coproduct.get((mu, nu), 0) == lr_processor.lr_product(mu, nu).get(lam, 0)


@settings(max_examples=20, deadline=None)
@given(partitions(max_degree=4), partitions(max_degree=4))
def test_qt_scalar_at_q_equal_t_is_hall(lam, mu):
    f = basis_converter.to_basis(SymExpansion.monomial(Basis.SCHUR, lam), Basis.H)
    g = SymExpansion.monomial(Basis.SCHUR, mu)
    qt_value = plethysm_processor.scalar(f, g, QT)
    hall_value = plethysm_processor.scalar(f, g, HALL)
    assert qt_value.substitute_q_by_t() == hall_value


def test_plethysm_in_degree_two():
    assert plethysm_processor.plethystic_substitute(s("2"), X_TIMES_T_MINUS_ONE) == schur(
        {"2": "t^2 - t", "1,1": "1 - t"}
    )
    assert plethysm_processor.plethystic_substitute(s("2"), X_TIMES_ONE_MINUS_T) == schur(
        {"2": "1 - t", "1,1": "t^2 - t"}
    )
    assert plethysm_processor.plethystic_substitute(s("2,1"), T_TIMES_X) == schur({"2,1": "t^3"})


def test_one_minus_t_undoes_division_by_one_minus_t():
    f = schur({"2,1": "t", "3": "1 + t"})
    over = plethysm_processor.plethystic_substitute(f, X_OVER_ONE_MINUS_T)
    back = plethysm_processor.plethystic_substitute(over, X_TIMES_ONE_MINUS_T)
    assert back.narrow(CoefficientRing.LAURENT_T) == f
