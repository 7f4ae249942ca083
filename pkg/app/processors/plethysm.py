from collections import Counter
from math import factorial
from typing import Dict

from app.models.coefficients import (
    T_TO_INVERSE,
    Coefficient,
    CoefficientRing,
    LaurentT,
    PolyQT,
    RatQT,
    coerce,
    join_rings,
    specialize,
    zero_of,
)
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.processors.basis_converter import CLASSICAL_BASES, basis_converter
from app.processors.partition_combinatorics import conjugate
from app.utils.errors import InvalidInput, UnsupportedConversion, UnsupportedRing
from app.utils.memo import PublishOnceCache

X_OVER_ONE_MINUS_T = "X/(1-t)"
X_TIMES_T_MINUS_ONE = "X(t-1)"
MINUS_X = "-X"
T_TIMES_X = "tX"
X_TIMES_ONE_MINUS_T = "X(1-t)"

SUBSTITUTIONS = (X_OVER_ONE_MINUS_T, X_TIMES_T_MINUS_ONE, MINUS_X, T_TIMES_X, X_TIMES_ONE_MINUS_T)

HALL = "hall"
QT = "qt"


def z_lambda(lam: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type lam"""
    value = 1
    for part, multiplicity in Counter(lam).items():
        value *= part**multiplicity * factorial(multiplicity)
    return value


def _one_minus_t_power(r: int) -> PolyQT:
    return PolyQT.from_terms({(0, 0): 1, (0, r): -1})


def _one_minus_q_power(r: int) -> PolyQT:
    return PolyQT.from_terms({(0, 0): 1, (r, 0): -1})


def _power_sum_factor(r: int, substitution: str) -> RatQT:
    if substitution == X_OVER_ONE_MINUS_T:
        return RatQT(1, _one_minus_t_power(r))
    if substitution == X_TIMES_T_MINUS_ONE:
        return RatQT(-_one_minus_t_power(r))
    if substitution == MINUS_X:
        return RatQT(-1)
    if substitution == T_TIMES_X:
        return RatQT(PolyQT.from_terms({(0, r): 1}))
    if substitution == X_TIMES_ONE_MINUS_T:
        return RatQT(_one_minus_t_power(r))
    raise InvalidInput(f"unknown plethystic substitution {substitution!r}")


def _result_ring(source: CoefficientRing, substitution: str) -> CoefficientRing:
    if substitution == X_OVER_ONE_MINUS_T:
        return CoefficientRing.RAT_QT
    if substitution == MINUS_X:
        return source
    if source == CoefficientRing.POLY_QT:
        return CoefficientRing.POLY_QT
    return join_rings(source, CoefficientRing.LAURENT_T)


def invert_t(value: Coefficient) -> Coefficient:
    if isinstance(value, (int, LaurentT)):
        return specialize(value, T_TO_INVERSE)
    if isinstance(value, PolyQT):
        return RatQT(value).invert_t()
    return value.invert_t()


class PlethysmProcessor:
    """Alphabet substitutions through the power-sum basis, omega involutions and scalar products"""

    def __init__(self):
        self._factors = PublishOnceCache("plethysm_factors")

    def _factor(self, lam: Partition, substitution: str) -> RatQT:
        def compute():
            value = RatQT(1)
            for part in lam:
                value = value * _power_sum_factor(part, substitution)
            return value

        return self._factors.get_or_compute((lam, substitution), compute)

    def plethystic_substitute(self, f: SymExpansion, substitution: str) -> SymExpansion:
        """f[sub] via p_r -> factor(r) p_r, returned in f's basis"""
        if substitution not in SUBSTITUTIONS:
            raise InvalidInput(f"unknown plethystic substitution {substitution!r}")
        if f.basis not in CLASSICAL_BASES:
            raise UnsupportedConversion(f"plethystic substitution needs a classical basis, got {f.label()}")
        target_ring = _result_ring(f.ring, substitution)

        in_p = basis_converter.to_basis(f, Basis.P).widen(CoefficientRing.RAT_QT)
        scaled = SymExpansion(
            Basis.P,
            {lam: coeff * self._factor(lam, substitution) for lam, coeff in in_p.items()},
            CoefficientRing.RAT_QT,
        )
        back = basis_converter.to_basis(scaled, f.basis)
        if target_ring == CoefficientRing.RAT_QT:
            return back
        return back.narrow(target_ring)

    def omega(self, f: SymExpansion, twisted: bool = False) -> SymExpansion:
        """omega: s_lam -> s_lam'; the twisted form also sends t to 1/t"""
        if f.basis == Basis.SCHUR:
            result = f.map_indices(conjugate)
        elif f.basis in (Basis.H, Basis.E):
            result = f.relabel(Basis.E if f.basis == Basis.H else Basis.H)
        elif f.basis in CLASSICAL_BASES:
            schur = basis_converter.to_schur(f).map_indices(conjugate)
            result = basis_converter.to_basis(schur, f.basis)
        else:
            raise UnsupportedConversion(f"omega needs a classical basis, got {f.label()}")

        if not twisted:
            return result
        ring = result.ring
        if ring == CoefficientRing.POLY_QT:
            ring = CoefficientRing.RAT_QT
        return result.map_coefficients(invert_t, ring=ring)

    def scalar(self, f: SymExpansion, g: SymExpansion, mode: str = HALL) -> Coefficient:
        if mode == HALL:
            left, right = basis_converter.to_schur(f), basis_converter.to_schur(g)
            ring = join_rings(left.ring, right.ring)
            total = zero_of(ring)
            for lam, coeff in left.items():
                if lam in right:
                    total = total + coerce(coeff, ring) * coerce(right.coefficient(lam), ring)
            return total
        if mode == QT:
            left = basis_converter.to_basis(f, Basis.P).widen(CoefficientRing.RAT_QT)
            right = basis_converter.to_basis(g, Basis.P).widen(CoefficientRing.RAT_QT)
            total = RatQT(0)
            for lam, coeff in left.items():
                if lam in right:
                    total = total + coeff * right.coefficient(lam) * self.qt_weight(lam)
            return total
        raise UnsupportedRing(f"unknown scalar product mode {mode!r}")

    def qt_weight(self, lam: Partition) -> RatQT:
        """<p_lam, p_lam>_{q,t} = z_lam prod (1 - q^l)/(1 - t^l)"""

        def compute():
            value = RatQT(z_lambda(lam))
            for part in lam:
                value = value * RatQT(_one_minus_q_power(part), _one_minus_t_power(part))
            return value

        return self._factors.get_or_compute((lam, QT), compute)

    def qt_gram(self, f_terms: Dict[Partition, RatQT], g_terms: Dict[Partition, RatQT]) -> RatQT:
        """qt pairing of two P-basis coefficient maps"""
        total = RatQT(0)
        for lam, coeff in f_terms.items():
            other = g_terms.get(lam)
            if other:
                total = total + coeff * other * self.qt_weight(lam)
        return total


plethysm_processor = PlethysmProcessor()
