from typing import Callable, Dict, List, NamedTuple, Optional

from app.models.coefficients import Coefficient, CoefficientRing, RatQT, coerce, join_rings
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.processors.littlewood_richardson import _accumulate, lr_processor
from app.processors.partition_combinatorics import conjugate, partitions_of
from app.processors.triangular_solver import solve_unitriangular
from app.utils.errors import UnsupportedConversion
from app.utils.logger import setup_logger
from app.utils.memo import PublishOnceCache

logger = setup_logger("basis_converter")

CLASSICAL_BASES = (Basis.M, Basis.E, Basis.H, Basis.P, Basis.SCHUR)


class BasisProvider(NamedTuple):
    """Conversion hooks for a basis built by a service (HL, KSPLIT, KSCHUR, MACJ, MACH)"""

    to_schur: Callable[[Partition, Optional[int]], SymExpansion]
    from_schur: Callable[[SymExpansion, Optional[int]], SymExpansion]


class BasisConverter:
    """Fixed conversion routes between symmetric-function bases, pivoting through SCHUR"""

    def __init__(self):
        self._tables: Dict[str, PublishOnceCache] = {
            name: PublishOnceCache(name)
            for name in ("h_to_schur", "schur_to_h", "schur_to_m", "m_to_schur", "h_to_p", "p_to_h")
        }
        self._providers: Dict[Basis, BasisProvider] = {}

    def register_provider(self, basis: Basis, provider: BasisProvider):
        self._providers[basis] = provider

    # classical single-index images

    def h_to_schur(self, lam: Partition) -> SymExpansion:
        """h_lam in SCHUR by iterated Pieri; the coefficients are Kostka numbers"""

        def compute():
            result = SymExpansion.one()
            for part in lam:
                result = lr_processor.pieri(result, part, "h")
            return result

        return self._tables["h_to_schur"].get_or_compute(lam, compute)

    def kostka(self, lam: Partition, mu: Partition) -> int:
        """Number of SSYT of shape lam and content mu"""
        return self.h_to_schur(mu).coefficient(lam)

    def schur_to_h(self, lam: Partition) -> SymExpansion:
        """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j})"""

        def compute():
            terms: Dict[Partition, int] = {}
            size = len(lam)

            def expand(row: int, used: List[bool], parts: List[int], sign: int):
                if row == size:
                    _accumulate(terms, Partition(sorted((p for p in parts if p), reverse=True)), sign)
                    return
                for column in range(size):
                    if used[column]:
                        continue
                    index = lam[row] - row + column
                    if index < 0:
                        continue
                    # sign flips once per earlier column still unused to the left
                    inversions = sum(1 for j in range(column) if not used[j])
                    used[column] = True
                    parts.append(index)
                    expand(row + 1, used, parts, -sign if inversions % 2 else sign)
                    parts.pop()
                    used[column] = False

            expand(0, [False] * size, [], 1)
            return SymExpansion(Basis.H, terms)

        return self._tables["schur_to_h"].get_or_compute(lam, compute)

    def schur_to_m(self, lam: Partition) -> SymExpansion:
        def compute():
            terms = {mu: self.kostka(lam, mu) for mu in partitions_of(lam.degree)}
            return SymExpansion(Basis.M, terms)

        return self._tables["schur_to_m"].get_or_compute(lam, compute)

    def m_to_schur(self, mu: Partition) -> SymExpansion:
        """Inverse Kostka: triangular solve, largest index first"""

        def compute():
            return solve_unitriangular(
                SymExpansion.monomial(Basis.M, mu),
                self.schur_to_m,
                lambda degree: reversed(partitions_of(degree)),
                Basis.SCHUR,
            )

        return self._tables["m_to_schur"].get_or_compute(mu, compute)

    def _p_single_in_h(self, n: int) -> SymExpansion:
        """Newton: p_n = n h_n - sum_{r<n} p_r h_{n-r}"""
        result = SymExpansion.monomial(Basis.H, Partition([n]), n)
        for r in range(1, n):
            h_rest = SymExpansion.monomial(Basis.H, Partition([n - r]))
            result = result - concat_product(self.p_to_h(Partition([r])), h_rest)
        return result

    def p_to_h(self, lam: Partition) -> SymExpansion:
        def compute():
            if len(lam) == 1:
                return self._p_single_in_h(lam[0])
            result = SymExpansion.one(Basis.H)
            for part in lam:
                result = concat_product(result, self.p_to_h(Partition([part])))
            return result

        return self._tables["p_to_h"].get_or_compute(lam, compute)

    def _h_single_in_p(self, n: int) -> SymExpansion:
        """Newton: n h_n = sum_{r=1..n} p_r h_{n-r}"""
        result = SymExpansion.zero(Basis.P, CoefficientRing.RAT_QT)
        for r in range(1, n + 1):
            rest = self.h_to_p(Partition([n - r])) if r < n else SymExpansion.one(Basis.P, CoefficientRing.RAT_QT)
            result = result + concat_product(SymExpansion.monomial(Basis.P, Partition([r])), rest)
        return result.scale(RatQT(1, n))

    def h_to_p(self, lam: Partition) -> SymExpansion:
        def compute():
            if len(lam) == 1:
                return self._h_single_in_p(lam[0])
            result = SymExpansion.one(Basis.P, CoefficientRing.RAT_QT)
            for part in lam:
                result = concat_product(result, self.h_to_p(Partition([part])))
            return result

        return self._tables["h_to_p"].get_or_compute(lam, compute)

    # routing

    def _to_schur_single(self, basis: Basis, lam: Partition, k: Optional[int]) -> SymExpansion:
        if basis == Basis.SCHUR:
            return SymExpansion.monomial(Basis.SCHUR, lam)
        if basis == Basis.H:
            return self.h_to_schur(lam)
        if basis == Basis.E:
            return self.h_to_schur(lam).map_indices(conjugate)
        if basis == Basis.M:
            return self.m_to_schur(lam)
        if basis == Basis.P:
            return linear_map(self.p_to_h(lam), self.h_to_schur, Basis.SCHUR)
        provider = self._providers.get(basis)
        if provider is None:
            raise UnsupportedConversion(f"no conversion registered for {basis.value}")
        return provider.to_schur(lam, k)

    def _from_schur_single(self, basis: Basis, lam: Partition) -> SymExpansion:
        if basis == Basis.H:
            return self.schur_to_h(lam)
        if basis == Basis.E:
            return self.schur_to_h(conjugate(lam)).relabel(Basis.E)
        if basis == Basis.M:
            return self.schur_to_m(lam)
        if basis == Basis.P:
            return linear_map(self.schur_to_h(lam), self.h_to_p, Basis.P)
        raise UnsupportedConversion(f"no single-index route from SCHUR to {basis.value}")

    def to_schur(self, f: SymExpansion) -> SymExpansion:
        if f.basis == Basis.SCHUR:
            return f
        return linear_map(f, lambda lam: self._to_schur_single(f.basis, lam, f.k), Basis.SCHUR)

    def to_basis(self, f: SymExpansion, target: Basis, k: Optional[int] = None) -> SymExpansion:
        """Mathematically equal expansion in the target basis (ring may widen)"""
        if f.basis == target and (k is None or f.k == k):
            return f
        schur = self.to_schur(f)
        if target == Basis.SCHUR:
            return schur
        if target in CLASSICAL_BASES:
            return linear_map(schur, lambda lam: self._from_schur_single(target, lam), target)
        provider = self._providers.get(target)
        if provider is None:
            raise UnsupportedConversion(f"no conversion registered for {target.value}")
        return provider.from_schur(schur, k)


def linear_map(
    f: SymExpansion,
    image: Callable[[Partition], SymExpansion],
    basis: Basis,
    k: Optional[int] = None,
) -> SymExpansion:
    """Extend a per-index image linearly over f"""
    images = {lam: image(lam) for lam in f}
    ring = f.ring
    for expansion in images.values():
        ring = join_rings(ring, expansion.ring)
    result: Dict[Partition, Coefficient] = {}
    for lam, coeff in f.items():
        coeff = coerce(coeff, ring)
        for mu, entry in images[lam].items():
            _accumulate(result, mu, coeff * coerce(entry, ring))
    return SymExpansion(basis, result, ring, k)


def concat_product(f: SymExpansion, g: SymExpansion) -> SymExpansion:
    """Product in a multiplicative basis (H, E, P): indices concatenate"""
    if f.basis != g.basis or f.basis not in (Basis.H, Basis.E, Basis.P):
        raise UnsupportedConversion(f"concatenation product undefined for {f.label()} x {g.label()}")
    ring = join_rings(f.ring, g.ring)
    result: Dict[Partition, Coefficient] = {}
    for lam, a in f.widen(ring).items():
        for mu, b in g.widen(ring).items():
            _accumulate(result, Partition(sorted(lam + mu, reverse=True)), a * b)
    return SymExpansion(f.basis, result, ring)


basis_converter = BasisConverter()
