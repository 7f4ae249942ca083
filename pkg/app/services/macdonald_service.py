from typing import Dict, Optional, Sequence, Tuple

from app.models.coefficients import CoefficientRing, PolyQT, RatQT
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.processors.basis_converter import BasisProvider, basis_converter
from app.processors.partition_combinatorics import arm, cells, check_k_bounded, dominance_lt, leg, partitions_of
from app.processors.plethysm import X_OVER_ONE_MINUS_T, plethysm_processor
from app.services.kschur_service import kschur_service
from app.utils.errors import InvalidInput, UnsupportedConversion
from app.utils.logger import setup_logger
from app.utils.memo import PublishOnceCache

logger = setup_logger("macdonald_service")


class OrthogonalFamily:
    """Monic Macdonald P_lam of one degree, kept in the M and P bases with their qt-norms"""

    def __init__(self, degree: int, order: Tuple[Partition, ...]):
        self.degree = degree
        self.order = order
        self.monomial: Dict[Partition, SymExpansion] = {}
        self.power_sum: Dict[Partition, SymExpansion] = {}
        self.norms: Dict[Partition, RatQT] = {}

    def build(self):
        for lam in self.order:
            in_m = SymExpansion.monomial(Basis.M, lam, RatQT(1))
            start = basis_converter.to_basis(in_m, Basis.P).widen(CoefficientRing.RAT_QT)
            in_p = start
            for mu in self.monomial:
                # P_mu for incomparable mu never enters P_lam
                if not dominance_lt(mu, lam):
                    continue
                projection = plethysm_processor.qt_gram(dict(start.terms), dict(self.power_sum[mu].terms))
                if not projection:
                    continue
                coeff = projection / self.norms[mu]
                in_m = in_m - self.monomial[mu].scale(coeff)
                in_p = in_p - self.power_sum[mu].scale(coeff)
            self.monomial[lam] = in_m
            self.power_sum[lam] = in_p
            self.norms[lam] = plethysm_processor.qt_gram(dict(in_p.terms), dict(in_p.terms))
        return self


def hook_product(lam: Partition) -> PolyQT:
    """prod over cells of (1 - q^arm t^(leg+1))"""
    value = PolyQT(1)
    for row, column in cells(lam):
        value = value * PolyQT.from_terms({(0, 0): 1, (arm(lam, row, column), leg(lam, row, column) + 1): -1})
    return value


def _check_order(degree: int, order: Sequence[Partition]) -> Tuple[Partition, ...]:
    order = tuple(Partition(lam) for lam in order)
    if sorted(order) != list(partitions_of(degree)):
        raise InvalidInput(f"order must list every partition of {degree} exactly once")
    position = {lam: i for i, lam in enumerate(order)}
    for lam in order:
        for mu in order:
            if dominance_lt(mu, lam) and position[mu] > position[lam]:
                raise InvalidInput(
                    "order is not a linear extension of dominance",
                    {"earlier": lam.to_text(), "later": mu.to_text()},
                )
    return order


class MacdonaldService:
    """Integral forms J_lam, modified H_lam = J_lam[X/(1-t)] and q,t-Kostka polynomials"""

    def __init__(self):
        self._families = PublishOnceCache("macdonald_families")
        self._integral = PublishOnceCache("macdonald_j")
        self._modified = PublishOnceCache("macdonald_h")

    def family(self, degree: int, order: Optional[Sequence[Partition]] = None) -> OrthogonalFamily:
        order = partitions_of(degree) if order is None else _check_order(degree, order)

        def compute():
            logger.log_computation("macdonald-p", None, str(degree), "computing", extensions=len(order))
            return OrthogonalFamily(degree, tuple(order)).build()

        return self._families.get_or_compute((degree, tuple(order)), compute)

    def macdonald_p(self, lam: Partition, order: Optional[Sequence[Partition]] = None) -> SymExpansion:
        """Monic P_lam in the monomial basis over RAT_QT"""
        return self.family(lam.degree, order).monomial[lam]

    def macdonald_j(self, lam: Partition) -> SymExpansion:
        def compute():
            scaled = self.macdonald_p(lam).scale(RatQT(hook_product(lam)))
            return basis_converter.to_schur(scaled).widen(CoefficientRing.RAT_QT)

        return self._integral.get_or_compute(lam, compute)

    def macdonald_h(self, lam: Partition) -> SymExpansion:
        def compute():
            substituted = plethysm_processor.plethystic_substitute(self.macdonald_j(lam), X_OVER_ONE_MINUS_T)
            return substituted.narrow(CoefficientRing.POLY_QT)

        return self._modified.get_or_compute(lam, compute)

    def qt_kostka(self, lam: Partition) -> Dict[Partition, PolyQT]:
        """K_{mu lam}(q,t): Schur coefficients of H_lam"""
        return dict(self.macdonald_h(lam).items())

    def kschur_qt_kostka(self, k: int, lam: Partition) -> Dict[Partition, PolyQT]:
        """K^(k)_{mu lam}(q,t): k-Schur coefficients of H_lam, certified in Z[q,t]"""
        check_k_bounded(lam, k)
        expansion = kschur_service.to_kschur_basis(k, self.macdonald_h(lam))
        return dict(expansion.narrow(CoefficientRing.POLY_QT).items())


def _no_inverse(basis: Basis):
    def refuse(f: SymExpansion, k: Optional[int]) -> SymExpansion:
        raise UnsupportedConversion(f"no conversion into {basis.value}")

    return refuse


macdonald_service = MacdonaldService()

basis_converter.register_provider(
    Basis.MACJ,
    BasisProvider(to_schur=lambda lam, k: macdonald_service.macdonald_j(lam), from_schur=_no_inverse(Basis.MACJ)),
)
basis_converter.register_provider(
    Basis.MACH,
    BasisProvider(to_schur=lambda lam, k: macdonald_service.macdonald_h(lam), from_schur=_no_inverse(Basis.MACH)),
)
