from itertools import combinations
from typing import Dict, Optional, Tuple

from app.models.coefficients import CoefficientRing, LaurentT
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition, PartitionSequence
from app.processors.basis_converter import BasisProvider, basis_converter
from app.processors.littlewood_richardson import _accumulate, lr_processor
from app.processors.partition_combinatorics import partitions_of
from app.processors.plethysm import X_TIMES_T_MINUS_ONE, plethysm_processor
from app.processors.triangular_solver import solve_unitriangular
from app.utils.errors import UnsupportedConversion
from app.utils.logger import setup_logger
from app.utils.memo import PublishOnceCache

logger = setup_logger("vertex_service")

MINUS_T = LaurentT.monomial(1, -1)


def _as_laurent_schur(f: SymExpansion) -> SymExpansion:
    if f.basis != Basis.SCHUR:
        raise UnsupportedConversion(f"vertex operators act on SCHUR expansions, got {f.label()}")
    return f.widen(CoefficientRing.LAURENT_T)


class VertexOperatorService:
    """Hall-Littlewood vertex operators B_l, their Jacobi-Trudi composites B_lambda and the products H_S"""

    def __init__(self):
        self._plethystic_rows = PublishOnceCache("schur_at_x_t_minus_one")
        self._hall_littlewood = PublishOnceCache("hall_littlewood")
        self._generalized = PublishOnceCache("generalized_schur_products")

    def plethystic_row(self, i: int) -> SymExpansion:
        """s_i[X(t-1)] in SCHUR over LAURENT_T"""

        def compute():
            single = SymExpansion.monomial(Basis.SCHUR, Partition([i] if i else []))
            return plethysm_processor.plethystic_substitute(single, X_TIMES_T_MINUS_ONE)

        return self._plethystic_rows.get_or_compute(i, compute)

    def b_ell(self, ell: int, f: SymExpansion) -> SymExpansion:
        """B_l f = sum_i s_{i+l} (s_i[X(t-1)])^perp f"""
        f = _as_laurent_schur(f)
        result: Dict[Partition, LaurentT] = {}
        for i in range(f.top_degree() + 1):
            if i + ell < 0:
                continue
            skewed = lr_processor.perp(self.plethystic_row(i), f)
            if not skewed:
                continue
            for mu, coeff in lr_processor.pieri(skewed, i + ell, "h").items():
                _accumulate(result, mu, coeff)
        return SymExpansion(Basis.SCHUR, result, CoefficientRing.LAURENT_T)

    def root_expansion(self, lam: Tuple[int, ...]) -> Dict[Tuple[int, ...], LaurentT]:
        """Expand prod_{i<j} (1 - t e_ij) applied to the index vector lam"""
        vectors: Dict[Tuple[int, ...], LaurentT] = {tuple(lam): LaurentT(1)}
        size = len(lam)
        for i in range(size):
            for j in range(i + 1, size):
                raised: Dict[Tuple[int, ...], LaurentT] = dict(vectors)
                for vector, coeff in vectors.items():
                    moved = list(vector)
                    moved[i] += 1
                    moved[j] -= 1
                    _accumulate(raised, tuple(moved), coeff * MINUS_T)
                vectors = raised
        return vectors

    def b_lambda(self, lam: Tuple[int, ...], f: SymExpansion) -> SymExpansion:
        """B_lam f, evaluating each composite B_{v_1}...B_{v_m} right to left"""
        f = _as_laurent_schur(f)
        composites: Dict[Tuple[int, ...], SymExpansion] = {(): f}

        def composite(vector: Tuple[int, ...]) -> SymExpansion:
            if vector not in composites:
                composites[vector] = self.b_ell(vector[0], composite(vector[1:]))
            return composites[vector]

        total = SymExpansion.zero(Basis.SCHUR, CoefficientRing.LAURENT_T)
        for vector, coeff in sorted(self.root_expansion(tuple(lam)).items()):
            total = total + composite(vector).scale(coeff)
        return total

    def hall_littlewood(self, lam: Partition) -> SymExpansion:
        """H_lam[X;t] = B_{lam_1} ... B_{lam_l} . 1"""

        def compute():
            if not lam:
                return SymExpansion.one(Basis.SCHUR, CoefficientRing.LAURENT_T)
            logger.log_computation("hall", None, lam.to_text(), "computing")
            return self.b_ell(lam[0], self.hall_littlewood(Partition(lam[1:])))

        return self._hall_littlewood.get_or_compute(lam, compute)

    def h_s(self, sequence: PartitionSequence) -> SymExpansion:
        """Generalized Schur product H_S = B_{lam^(1)} H_{(lam^(2), ...)}"""
        sequence = PartitionSequence(sequence).canonical()

        def compute():
            if not sequence:
                return SymExpansion.one(Basis.SCHUR, CoefficientRing.LAURENT_T)
            logger.log_computation("hs", None, sequence.to_text(), "computing")
            return self.b_lambda(sequence[0], self.h_s(PartitionSequence(sequence[1:])))

        return self._generalized.get_or_compute(sequence, compute)

    def to_hall_littlewood_basis(self, f: SymExpansion, k: Optional[int] = None) -> SymExpansion:
        return solve_unitriangular(
            f.widen(CoefficientRing.LAURENT_T) if f.ring == CoefficientRing.INT else f,
            self.hall_littlewood,
            partitions_of,
            Basis.HL,
            row_ring=CoefficientRing.LAURENT_T,
        )


class MorrisKostkaService:
    """Generalized Kostka polynomials K_{mu;S}(t) through the Morris-type recurrence"""

    def __init__(self):
        self._tables = PublishOnceCache("morris_kostka")

    def morris_kostka(self, sequence: PartitionSequence) -> Dict[Partition, LaurentT]:
        sequence = PartitionSequence(sequence).canonical()
        return self._tables.get_or_compute(sequence, lambda: self._compute(sequence))

    def _compute(self, sequence: PartitionSequence) -> Dict[Partition, LaurentT]:
        if not sequence:
            return {Partition(): LaurentT(1)}
        if len(sequence) == 1:
            return {sequence[0]: LaurentT(1)}

        head = sequence[0]
        inner = self.morris_kostka(PartitionSequence(sequence[1:]))
        m = len(head)
        n = sequence.degree
        result: Dict[Partition, LaurentT] = {}

        for mu in partitions_of(n):
            weight = [mu.part(j) for j in range(n)]
            total = LaurentT()
            for chosen in combinations(range(1, n + 1), m):
                alpha = [weight[i - 1] - (i - r) for r, i in enumerate(chosen, 1)]
                if alpha[-1] < 0 or any(alpha[r] < head[r] for r in range(m)):
                    continue
                picked = set(chosen)
                others = [j for j in range(1, n + 1) if j not in picked]
                beta = [weight[w - 1] - (w - j) for j, w in enumerate(others, m + 1)]
                if beta and beta[-1] < 0:
                    continue

                alpha_shape = Partition(p for p in alpha if p)
                beta_shape = Partition(p for p in beta if p)
                pairing = 0
                for rho, c in lr_processor.skew_coefficients(head, alpha_shape).items():
                    for nu, d in lr_processor.lr_product(rho, beta_shape).items():
                        if nu in inner:
                            pairing = inner[nu] * (c * d) + pairing
                if not pairing:
                    continue
                length = sum(i - r for r, i in enumerate(chosen, 1))
                sign = -1 if length % 2 else 1
                total = total + pairing * LaurentT.monomial(alpha_shape.degree - head.degree, sign)
            if total:
                result[mu] = total
        return result


vertex_service = VertexOperatorService()
morris_service = MorrisKostkaService()

basis_converter.register_provider(
    Basis.HL,
    BasisProvider(
        to_schur=lambda lam, k: vertex_service.hall_littlewood(lam),
        from_schur=vertex_service.to_hall_littlewood_basis,
    ),
)
