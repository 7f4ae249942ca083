from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Tuple

from app.models.coefficients import Coefficient, join_rings
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.processors.partition_combinatorics import (
    HORIZONTAL,
    VERTICAL,
    add_strips,
    contains,
    partitions_of,
)
from app.utils.errors import InvalidInput, UnsupportedConversion
from app.utils.memo import PublishOnceCache

PIERI_H = "h"
PIERI_E = "e"


def _accumulate(target: Dict, key, value):
    updated = target[key] + value if key in target else value
    if updated:
        target[key] = updated
    else:
        target.pop(key, None)


def _require_schur(*expansions: SymExpansion):
    for f in expansions:
        if f.basis != Basis.SCHUR:
            raise UnsupportedConversion(f"expected a SCHUR expansion, got {f.label()}")


class LittlewoodRichardsonProcessor:
    """Schur products, Pieri rules, skewing and coproducts through lattice-word fillings"""

    def __init__(self):
        self._products = PublishOnceCache("lr_products")
        self._skews = PublishOnceCache("lr_skews")

    def _place_label(
        self, shape: Tuple[int, ...], previous: Optional[Tuple[int, ...]], size: int
    ) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Add `size` copies of the next label as a horizontal strip keeping the word lattice"""
        padded = shape + (0,)
        rows = len(padded)
        allowance = None
        if previous is not None:
            # label i in rows <= r never outnumbers label i-1 in rows < r
            allowance = [0] * rows
            running = 0
            for r in range(rows):
                allowance[r] = running
                running += previous[r] if r < len(previous) else 0

        def fill(r: int, remaining: int, placed: int, counts: List[int]):
            if r == rows:
                if remaining == 0:
                    grown = tuple(p + a for p, a in zip(padded, counts))
                    yield tuple(p for p in grown if p), tuple(counts)
                return
            cap = remaining
            if r > 0:
                cap = min(cap, shape[r - 1] - padded[r])
            if allowance is not None:
                cap = min(cap, allowance[r] - placed)
            for extra in range(max(cap, -1), -1, -1):
                counts.append(extra)
                yield from fill(r + 1, remaining - extra, placed + extra, counts)
                counts.pop()

        yield from fill(0, size, 0, [])

    def _compute_product(self, lam: Partition, mu: Partition) -> Dict[Partition, int]:
        states: Dict[Tuple[Tuple[int, ...], Optional[Tuple[int, ...]]], int] = {(tuple(lam), None): 1}
        for size in mu:
            grown: Dict = defaultdict(int)
            for (shape, previous), multiplicity in states.items():
                for new_shape, counts in self._place_label(shape, previous, size):
                    grown[(new_shape, counts)] += multiplicity
            states = grown

        result: Dict[Partition, int] = defaultdict(int)
        for (shape, _), multiplicity in states.items():
            result[Partition(shape)] += multiplicity
        return dict(result)

    def lr_product(self, lam: Partition, mu: Partition) -> Dict[Partition, int]:
        """Coefficients c^nu_{lam,mu} of s_lam * s_mu"""
        if (mu.degree, mu) > (lam.degree, lam):
            lam, mu = mu, lam
        return self._products.get_or_compute((lam, mu), lambda: self._compute_product(lam, mu))

    def lr_coefficient(self, nu: Partition, lam: Partition, mu: Partition) -> int:
        if nu.degree != lam.degree + mu.degree:
            return 0
        return self.lr_product(lam, mu).get(nu, 0)

    def skew_coefficients(self, mu: Partition, lam: Partition) -> Dict[Partition, int]:
        """Coefficients c^lam_{mu,nu} of s_mu^perp s_lam"""

        def compute() -> Dict[Partition, int]:
            if not contains(lam, mu):
                return {}
            found = {}
            for nu in partitions_of(lam.degree - mu.degree):
                if contains(lam, nu):
                    c = self.lr_coefficient(lam, mu, nu)
                    if c:
                        found[nu] = c
            return found

        return self._skews.get_or_compute((mu, lam), compute)

    def schur_multiply(self, f: SymExpansion, g: SymExpansion) -> SymExpansion:
        _require_schur(f, g)
        ring = join_rings(f.ring, g.ring)
        f, g = f.widen(ring), g.widen(ring)
        product: Dict[Partition, Coefficient] = {}
        for lam, a in f.items():
            for mu, b in g.items():
                ab = a * b
                for nu, c in self.lr_product(lam, mu).items():
                    _accumulate(product, nu, ab * c)
        return SymExpansion(Basis.SCHUR, product, ring)

    def pieri(self, f: SymExpansion, r: int, kind: str = PIERI_H) -> SymExpansion:
        """Multiply by h_r (horizontal strips) or e_r (vertical strips)"""
        _require_schur(f)
        if kind not in (PIERI_H, PIERI_E):
            raise InvalidInput(f"unknown Pieri kind {kind!r}")
        if r < 0:
            return SymExpansion.zero(Basis.SCHUR, f.ring)
        strip = HORIZONTAL if kind == PIERI_H else VERTICAL
        product: Dict[Partition, Coefficient] = {}
        for lam, coeff in f.items():
            for mu in add_strips(lam, r, strip):
                _accumulate(product, mu, coeff)
        return SymExpansion(Basis.SCHUR, product, f.ring)

    def skew(self, mu: Partition, f: SymExpansion) -> SymExpansion:
        """s_mu^perp f"""
        _require_schur(f)
        result: Dict[Partition, Coefficient] = {}
        for lam, coeff in f.items():
            for nu, c in self.skew_coefficients(mu, lam).items():
                _accumulate(result, nu, coeff * c)
        return SymExpansion(Basis.SCHUR, result, f.ring)

    def perp(self, g: SymExpansion, f: SymExpansion) -> SymExpansion:
        """g^perp f for g given in SCHUR"""
        _require_schur(g, f)
        ring = join_rings(f.ring, g.ring)
        result: Dict[Partition, Coefficient] = {}
        for mu, a in g.widen(ring).items():
            for nu, coeff in self.skew(mu, f.widen(ring)).items():
                _accumulate(result, nu, a * coeff)
        return SymExpansion(Basis.SCHUR, result, ring)

    def coproduct(self, lam: Partition) -> Dict[Tuple[Partition, Partition], int]:
        """c^lam_{mu,rho} with s_lam[X+Y] = sum c s_mu[X] s_rho[Y]"""
        result: Dict[Tuple[Partition, Partition], int] = {}
        for size in range(lam.degree + 1):
            for mu in partitions_of(size):
                for rho, c in self.skew_coefficients(mu, lam).items():
                    result[(mu, rho)] = c
        return result


lr_processor = LittlewoodRichardsonProcessor()
