import pytest

from app.models.coefficients import CoefficientRing, RatQT
from app.models.expansion import Basis, SymExpansion
from app.processors.basis_converter import basis_converter
from app.processors.partition_combinatorics import partitions_of
from app.processors.plethysm import QT, plethysm_processor
from app.services.macdonald_service import hook_product, macdonald_service
from app.utils.errors import InvalidInput, NotKBounded, UnsupportedConversion
from tests.helpers import P, qt


def test_hook_product():
    assert hook_product(P("1")) == qt("1 - t")
    assert hook_product(P("2,1")) == qt("(1 - q*t^2)*(1 - t)^2")


def test_macdonald_p_in_monomials():
    p11 = macdonald_service.macdonald_p(P("1,1"))
    assert dict(p11.terms) == {P("1,1"): 1}
    p2 = macdonald_service.macdonald_p(P("2"))
    assert p2.basis == Basis.M
    assert p2.coefficient(P("2")) == 1
    assert p2.coefficient(P("1,1")) == RatQT(qt("(1 + q)*(1 - t)"), qt("1 - q*t"))


def test_integral_form():
    j1 = macdonald_service.macdonald_j(P("1"))
    assert j1.ring == CoefficientRing.RAT_QT
    assert j1.coefficient(P("1")) == qt("1 - t")


def test_integral_forms_are_orthogonal():
    j2 = macdonald_service.macdonald_j(P("2"))
    j11 = macdonald_service.macdonald_j(P("1,1"))
    assert plethysm_processor.scalar(j2, j11, QT) == 0


@pytest.mark.parametrize(
    "index, expected",
    [
        ("1", {"1": "1"}),
        ("2", {"2": "1", "1,1": "q"}),
        ("1,1", {"1,1": "1", "2": "t"}),
        ("2,1", {"1,1,1": "q", "2,1": "1 + q*t", "3": "t"}),
    ],
)
def test_modified_macdonald(index, expected):
    h = macdonald_service.macdonald_h(P(index))
    assert h.ring == CoefficientRing.POLY_QT
    assert macdonald_service.qt_kostka(P(index)) == {P(mu): qt(c) for mu, c in expected.items()}


def test_qt_kostka_specializations():
    for lam in partitions_of(4):
        kostka = macdonald_service.qt_kostka(lam)
        assert all(c.is_nonnegative() for c in kostka.values())
        at_q_zero = {mu: c.at_q_zero() for mu, c in kostka.items() if c.at_q_zero()}
        hall = basis_converter.to_schur(SymExpansion.monomial(Basis.HL, lam))
        assert at_q_zero == dict(hall.terms)


@pytest.mark.parametrize(
    "k, index, expected",
    [
        (2, "1,1,1", {"1,1,1": "1", "2,1": "t^2"}),
        (2, "2,1", {"1,1,1": "q", "2,1": "1"}),
        (3, "2,1", {"2,1": "1 + q*t", "1,1,1": "q", "3": "t"}),
    ],
)
def test_kschur_qt_kostka(k, index, expected):
    assert macdonald_service.kschur_qt_kostka(k, P(index)) == {P(mu): qt(c) for mu, c in expected.items()}


def test_kschur_qt_kostka_needs_bounded_index():
    with pytest.raises(NotKBounded):
        macdonald_service.kschur_qt_kostka(2, P("3"))


def test_alternative_linear_extension():
    order = list(partitions_of(6))
    i, j = order.index(P("3,3")), order.index(P("4,1,1"))
    order[i], order[j] = order[j], order[i]
    assert macdonald_service.macdonald_p(P("3,3"), order) == macdonald_service.macdonald_p(P("3,3"))


def test_order_must_extend_dominance():
    with pytest.raises(InvalidInput):
        macdonald_service.family(3, [P("3"), P("2,1"), P("1,1,1")])
    with pytest.raises(InvalidInput):
        macdonald_service.family(3, [P("1,1,1"), P("2,1")])


def test_macdonald_bases_convert_one_way():
    h21 = SymExpansion.monomial(Basis.MACH, P("2,1"))
    assert basis_converter.to_schur(h21) == macdonald_service.macdonald_h(P("2,1"))
    with pytest.raises(UnsupportedConversion):
        basis_converter.to_basis(SymExpansion.monomial(Basis.SCHUR, P("2")), Basis.MACH)
