from typing import Dict, Iterator, List, NamedTuple, Tuple

from app.models.coefficients import T_TO_ONE, CoefficientRing, LaurentT
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.processors.basis_converter import BasisProvider, basis_converter
from app.processors.littlewood_richardson import PIERI_E, PIERI_H, lr_processor
from app.processors.partition_combinatorics import (
    HORIZONTAL,
    VERTICAL,
    add_strips,
    check_k_bounded,
    irreducible_core,
    is_k_reducible,
    k_conjugate,
    k_rectangle,
    k_split,
    partitions_of,
    strip_test,
    union,
)
from app.processors.triangular_solver import solve_unitriangular
from app.services.vertex_service import vertex_service
from app.utils.errors import InvalidInput, TheoremViolation
from app.utils.logger import setup_logger
from app.utils.memo import PublishOnceCache

logger = setup_logger("kschur_service")

KSCHUR = "kschur"
KSPLIT = "ksplit"


class GBasisMatrix:
    """Unitriangular rows G^(k)_lam (lam k-bounded, |lam| = degree) in SCHUR"""

    def __init__(self, k: int, degree: int, rows: Dict[Partition, SymExpansion]):
        self.k = k
        self.degree = degree
        self.rows = rows

    def solve(self, f: SymExpansion) -> SymExpansion:
        return solve_unitriangular(
            f,
            self.rows.__getitem__,
            lambda d: sorted(self.rows) if d == self.degree else (),
            Basis.KSPLIT,
            self.k,
            CoefficientRing.LAURENT_T,
        )


class Factorization(NamedTuple):
    core: Partition
    rectangles: List[Partition]
    t_power: int


def _schur(f: SymExpansion) -> SymExpansion:
    return basis_converter.to_schur(f)


def _first_part(lam: Partition) -> int:
    return lam[0] if lam else 0


class KSchurService:
    """k-split polynomials, projections T_j and the k-Schur functions of the filtration"""

    def __init__(self):
        self._tables: Dict[str, PublishOnceCache] = {
            name: PublishOnceCache(name) for name in (KSPLIT, KSCHUR, "ksplit_t1", "kschur_t1")
        }

    # general t

    def k_split_poly(self, k: int, lam: Partition) -> SymExpansion:
        """G^(k)_lam[X;t] = H_{lam -> k}"""
        check_k_bounded(lam, k)
        return self._tables[KSPLIT].get_or_compute((k, lam), lambda: vertex_service.h_s(k_split(lam, k)))

    def g_basis_matrix(self, k: int, degree: int) -> GBasisMatrix:
        return GBasisMatrix(k, degree, {lam: self.k_split_poly(k, lam) for lam in partitions_of(degree, k)})

    def to_g_basis(self, k: int, f: SymExpansion) -> SymExpansion:
        return solve_unitriangular(
            _schur(f),
            lambda lam: self.k_split_poly(k, lam),
            lambda degree: partitions_of(degree, k),
            Basis.KSPLIT,
            k,
            CoefficientRing.LAURENT_T,
        )

    def t_bar_project(self, k: int, j: int, f: SymExpansion) -> SymExpansion:
        """Keep the G^(k)-terms whose index starts with j"""
        if j > k:
            raise InvalidInput(f"projection index {j} exceeds k={k}")
        kept = {lam: c for lam, c in self.to_g_basis(k, f).items() if _first_part(lam) == j}
        return basis_converter.to_schur(SymExpansion(Basis.KSPLIT, kept, None, k))

    def k_schur(self, k: int, lam: Partition) -> SymExpansion:
        """s^(k)_lam[X;t] = T_{lam_1} B_{lam_1} s^(k)_{(lam_2, ...)}"""
        check_k_bounded(lam, k)

        def compute():
            if not lam:
                return SymExpansion.one(Basis.SCHUR, CoefficientRing.LAURENT_T)
            logger.log_computation(KSCHUR, k, lam.to_text(), "computing")
            raised = vertex_service.b_ell(lam[0], self.k_schur(k, Partition(lam[1:])))
            return self.t_bar_project(k, lam[0], raised).widen(CoefficientRing.LAURENT_T)

        return self._tables[KSCHUR].get_or_compute((k, lam), compute)

    def to_kschur_basis(self, k: int, f: SymExpansion) -> SymExpansion:
        return solve_unitriangular(
            _schur(f),
            lambda lam: self.k_schur(k, lam),
            lambda degree: partitions_of(degree, k),
            Basis.KSCHUR,
            k,
            CoefficientRing.LAURENT_T,
        )

    def rectangle_action(self, k: int, ell: int, lam: Partition) -> int:
        """c with B_R s^(k)_lam = t^c s^(k)_{lam u R}, R the k-rectangle of width ell"""
        check_k_bounded(lam, k)
        rectangle = k_rectangle(k, ell)
        target = union(lam, rectangle)
        result = vertex_service.b_lambda(rectangle, self.k_schur(k, lam))
        expected = self.k_schur(k, target)
        context = {"k": k, "ell": ell, "index": lam.to_text()}

        leading = result.coefficient(target)
        single = leading.as_monomial() if isinstance(leading, LaurentT) else None
        if single is None or single[1] != 1 or single[0] < 0:
            raise TheoremViolation(
                "rectangle action has no single t-power leading term", {**context, "leading": str(leading)}
            )
        c = single[0]
        if result != expected.scale(LaurentT.monomial(c)):
            raise TheoremViolation("rectangle action is not a t-power multiple of a k-Schur function", context)
        return c

    def irreducible_factorization(self, k: int, lam: Partition) -> Factorization:
        """Rebuild s^(k)_lam from its k-irreducible core by rectangle actions"""
        core, rectangles = irreducible_core(lam, k)
        current, total = core, 0
        for rectangle in rectangles:
            total += self.rectangle_action(k, rectangle[0], current)
            current = union(current, rectangle)
        return Factorization(core, rectangles, total)

    # t = 1

    def k_split_poly_t1(self, k: int, lam: Partition) -> SymExpansion:
        """G^(k)_lam[X] = product of the Schur functions of the k-split blocks"""
        check_k_bounded(lam, k)

        def compute():
            product = SymExpansion.one()
            for block in k_split(lam, k):
                product = lr_processor.schur_multiply(product, SymExpansion.monomial(Basis.SCHUR, block))
            return product

        return self._tables["ksplit_t1"].get_or_compute((k, lam), compute)

    def to_g_basis_t1(self, k: int, f: SymExpansion) -> SymExpansion:
        return solve_unitriangular(
            _schur(f),
            lambda lam: self.k_split_poly_t1(k, lam),
            lambda degree: partitions_of(degree, k),
            Basis.KSPLIT_T1,
            k,
        )

    def t_project_t1(self, k: int, j: int, f: SymExpansion) -> SymExpansion:
        if j > k:
            raise InvalidInput(f"projection index {j} exceeds k={k}")
        result = SymExpansion.zero(Basis.SCHUR, f.ring)
        for lam, c in self.to_g_basis_t1(k, f).items():
            if _first_part(lam) == j:
                result = result + self.k_split_poly_t1(k, lam).scale(c)
        return result

    def k_schur_t1(self, k: int, lam: Partition) -> SymExpansion:
        """s^(k)_lam[X] = T_{lam_1}(s_{lam_1} s^(k)_{(lam_2, ...)})"""
        check_k_bounded(lam, k)

        def compute():
            if not lam:
                return SymExpansion.one()
            head = SymExpansion.monomial(Basis.SCHUR, Partition([lam[0]]))
            product = lr_processor.schur_multiply(head, self.k_schur_t1(k, Partition(lam[1:])))
            return self.t_project_t1(k, lam[0], product)

        return self._tables["kschur_t1"].get_or_compute((k, lam), compute)

    def to_kschur_basis_t1(self, k: int, f: SymExpansion) -> SymExpansion:
        f = _schur(f)
        if f.ring == CoefficientRing.LAURENT_T:
            f = f.specialize_t(T_TO_ONE)
        return solve_unitriangular(
            f,
            lambda lam: self.k_schur_t1(k, lam),
            lambda degree: partitions_of(degree, k),
            Basis.KSCHUR_T1,
            k,
        )

    def quotient_reduce(self, k: int, f: SymExpansion) -> SymExpansion:
        """Image in the quotient by the ideal of k-rectangles: drop reducible indices"""
        expansion = self.to_kschur_basis_t1(k, f)
        kept = {lam: c for lam, c in expansion.items() if not is_k_reducible(lam, k)}
        return SymExpansion(Basis.KSCHUR_T1, kept, expansion.ring, k)

    def k_schur_product_t1(self, k: int, lam: Partition, mu: Partition) -> SymExpansion:
        product = lr_processor.schur_multiply(self.k_schur_t1(k, lam), self.k_schur_t1(k, mu))
        return self.to_kschur_basis_t1(k, product)

    def pieri_sets(self, k: int, lam: Partition, ell: int, kind: str) -> List[Partition]:
        """k-bounded mu with mu/lam an ell-strip whose k-conjugates differ by the dual strip"""
        check_k_bounded(lam, k)
        if ell > k:
            raise InvalidInput(f"strip size {ell} exceeds k={k}")
        if kind not in (PIERI_H, PIERI_E):
            raise InvalidInput(f"unknown Pieri kind {kind!r}")
        strip, dual = (HORIZONTAL, VERTICAL) if kind == PIERI_H else (VERTICAL, HORIZONTAL)
        conjugate_lam = k_conjugate(lam, k)
        return [
            mu
            for mu in add_strips(lam, ell, strip)
            if _first_part(mu) <= k and strip_test(conjugate_lam, k_conjugate(mu, k), ell, dual)
        ]

    # persistent cache plumbing

    def cached_entries(self) -> Iterator[Tuple[str, int, Partition, SymExpansion]]:
        for kind in (KSPLIT, KSCHUR):
            for (k, lam), expansion in self._tables[kind].items():
                yield kind, k, lam, expansion

    def seed(self, kind: str, k: int, lam: Partition, expansion: SymExpansion):
        self._tables[kind].publish((k, lam), expansion)


kschur_service = KSchurService()

basis_converter.register_provider(
    Basis.KSPLIT,
    BasisProvider(
        to_schur=lambda lam, k: kschur_service.k_split_poly(k, lam),
        from_schur=lambda f, k: kschur_service.to_g_basis(k, f),
    ),
)
basis_converter.register_provider(
    Basis.KSCHUR,
    BasisProvider(
        to_schur=lambda lam, k: kschur_service.k_schur(k, lam),
        from_schur=lambda f, k: kschur_service.to_kschur_basis(k, f),
    ),
)
basis_converter.register_provider(
    Basis.KSPLIT_T1,
    BasisProvider(
        to_schur=lambda lam, k: kschur_service.k_split_poly_t1(k, lam),
        from_schur=lambda f, k: kschur_service.to_g_basis_t1(k, f),
    ),
)
basis_converter.register_provider(
    Basis.KSCHUR_T1,
    BasisProvider(
        to_schur=lambda lam, k: kschur_service.k_schur_t1(k, lam),
        from_schur=lambda f, k: kschur_service.to_kschur_basis_t1(k, f),
    ),
)
