from enum import Enum
from types import MappingProxyType
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

from app.models.coefficients import (
    T_TO_INVERSE,
    T_TO_ONE,
    Coefficient,
    CoefficientRing,
    coerce,
    join_rings,
    narrow,
    ring_of,
    specialize,
    zero_of,
)
from app.models.partition import Partition
from app.utils.errors import NotKBounded, UnsupportedConversion, UnsupportedRing


class Basis(str, Enum):
    M = "M"
    E = "E"
    H = "H"
    P = "P"
    SCHUR = "SCHUR"
    HL = "HL"
    KSPLIT = "KSPLIT"
    KSCHUR = "KSCHUR"
    KSPLIT_T1 = "KSPLIT_T1"
    KSCHUR_T1 = "KSCHUR_T1"
    MACJ = "MACJ"
    MACH = "MACH"


K_INDEXED = (Basis.KSPLIT, Basis.KSCHUR, Basis.KSPLIT_T1, Basis.KSCHUR_T1)


class SymExpansion:
    """Immutable sparse expansion Partition -> coefficient in a tagged basis"""

    __slots__ = ("basis", "k", "ring", "_terms")

    def __init__(
        self,
        basis: Basis,
        terms: Optional[Mapping] = None,
        ring: Optional[CoefficientRing] = None,
        k: Optional[int] = None,
    ):
        collected: Dict[Partition, Coefficient] = {}
        detected = CoefficientRing.INT
        for index, coeff in (terms or {}).items():
            if not coeff:
                continue
            key = index if isinstance(index, Partition) else Partition(index)
            detected = join_rings(detected, ring_of(coeff))
            collected[key] = coeff

        target = ring or detected
        if join_rings(detected, target) != target:
            raise UnsupportedRing(
                f"coefficients in {detected.value} do not fit {target.value}",
                {"basis": basis.value},
            )
        for key, coeff in collected.items():
            if ring_of(coeff) != target:
                collected[key] = coerce(coeff, target)

        if basis in K_INDEXED:
            if k is None:
                raise UnsupportedConversion(f"{basis.value} expansions need k")
            for key in collected:
                if key and key[0] > k:
                    raise NotKBounded(f"index {key.to_text()!r} is not {k}-bounded", {"k": k})
        else:
            k = None

        self.basis = basis
        self.k = k
        self.ring = target
        self._terms = collected

    @classmethod
    def zero(cls, basis: Basis = Basis.SCHUR, ring: CoefficientRing = CoefficientRing.INT, k=None):
        return cls(basis, {}, ring, k)

    @classmethod
    def one(cls, basis: Basis = Basis.SCHUR, ring: CoefficientRing = CoefficientRing.INT, k=None):
        return cls(basis, {Partition(): 1}, ring, k)

    @classmethod
    def monomial(cls, basis: Basis, index, coeff: Coefficient = 1, ring=None, k=None):
        return cls(basis, {index: coeff}, ring, k)

    @property
    def terms(self) -> Mapping[Partition, Coefficient]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, index) -> Coefficient:
        return self._terms.get(index, zero_of(self.ring))

    def support(self) -> List[Partition]:
        return sorted(self._terms, key=lambda lam: (lam.degree, lam))

    def sorted_terms(self) -> List[Tuple[Partition, Coefficient]]:
        """Emission order: decreasing degree, then decreasing lex"""
        return sorted(self._terms.items(), key=lambda item: (item[0].degree, item[0]), reverse=True)

    def degrees(self) -> List[int]:
        return sorted({lam.degree for lam in self._terms})

    def top_degree(self) -> int:
        return max((lam.degree for lam in self._terms), default=0)

    def homogeneous_components(self) -> Dict[int, "SymExpansion"]:
        grouped: Dict[int, Dict[Partition, Coefficient]] = {}
        for lam, coeff in self._terms.items():
            grouped.setdefault(lam.degree, {})[lam] = coeff
        return {d: self._rebuild(grouped[d]) for d in sorted(grouped)}

    def _rebuild(self, terms, ring=None, basis=None, k=None) -> "SymExpansion":
        basis = basis or self.basis
        return SymExpansion(basis, terms, ring or self.ring, k if k is not None else self.k)

    def relabel(self, basis: Basis, k: Optional[int] = None) -> "SymExpansion":
        return SymExpansion(basis, self._terms, self.ring, k)

    def widen(self, ring: CoefficientRing) -> "SymExpansion":
        if ring == self.ring:
            return self
        return self._rebuild(self._terms, ring=ring)

    def narrow(self, ring: CoefficientRing) -> "SymExpansion":
        """Exactness-checked narrowing of every coefficient"""
        return self._rebuild({lam: narrow(c, ring) for lam, c in self._terms.items()}, ring=ring)

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient], ring=None) -> "SymExpansion":
        return self._rebuild({lam: fn(c) for lam, c in self._terms.items()}, ring=ring)

    def map_indices(self, fn: Callable[[Partition], Partition], basis=None) -> "SymExpansion":
        mapped: Dict[Partition, Coefficient] = {}
        for lam, coeff in self._terms.items():
            target = fn(lam)
            mapped[target] = mapped[target] + coeff if target in mapped else coeff
        return self._rebuild(mapped, basis=basis)

    def specialize_t(self, mode: str) -> "SymExpansion":
        if self.ring not in (CoefficientRing.INT, CoefficientRing.LAURENT_T):
            raise UnsupportedRing(f"t-specialization needs LAURENT_T coefficients, got {self.ring.value}")
        if mode == T_TO_ONE:
            return self._rebuild({lam: specialize(c, mode) for lam, c in self._terms.items()}, ring=CoefficientRing.INT)
        if mode == T_TO_INVERSE:
            return self.map_coefficients(lambda c: specialize(c, mode))
        raise UnsupportedRing(f"unknown specialization {mode!r}")

    def _check_compatible(self, other: "SymExpansion"):
        if self.basis != other.basis or self.k != other.k:
            raise UnsupportedConversion(
                "cannot combine expansions in different bases",
                {"left": self.label(), "right": other.label()},
            )

    def __add__(self, other: "SymExpansion") -> "SymExpansion":
        if not isinstance(other, SymExpansion):
            return NotImplemented
        self._check_compatible(other)
        ring = join_rings(self.ring, other.ring)
        left = self.widen(ring)._terms
        merged = dict(left)
        for lam, coeff in other.widen(ring)._terms.items():
            merged[lam] = merged[lam] + coeff if lam in merged else coeff
        return self._rebuild(merged, ring=ring)

    def __neg__(self) -> "SymExpansion":
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other: "SymExpansion") -> "SymExpansion":
        if not isinstance(other, SymExpansion):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Coefficient) -> "SymExpansion":
        ring = join_rings(self.ring, ring_of(factor))
        factor = coerce(factor, ring)
        return self._rebuild({lam: coerce(c, ring) * factor for lam, c in self._terms.items()}, ring=ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymExpansion):
            return NotImplemented
        if self.basis != other.basis or self.k != other.k:
            return False
        if self._terms.keys() != other._terms.keys():
            return False
        return all(self._terms[lam] == other._terms[lam] for lam in self._terms)

    __hash__ = None

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self._terms)

    def __contains__(self, index) -> bool:
        return index in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def label(self) -> str:
        return self.basis.value if self.k is None else f"{self.basis.value}({self.k})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({coeff})*{self.label()}[{lam.to_text()}]" for lam, coeff in self.sorted_terms())

    def __repr__(self):
        return f"SymExpansion({self.to_text()})"
