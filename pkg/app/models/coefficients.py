"""Exact coefficient rings: integers, Laurent polynomials in t, polynomials in q,t
and rational functions in q,t.

Polynomial storage is delegated to sympy's sparse rings ``ZZ[t]`` and
``ZZ[q,t]`` (graded-lex, q > t). The wrappers below are immutable values.
"""

from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from sympy import Symbol, SympifyError, expand, sympify
from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed, HeuristicGCDFailed
from sympy.polys.rings import ring

from app.utils.errors import InvalidInput, NotPolynomial, UnsupportedRing

T_RING, T_GEN = ring("t", ZZ)
QT_RING, Q_GEN, QT_T_GEN = ring("q,t", ZZ, grlex)

_Q_SYMBOL = Symbol("q")
_T_SYMBOL = Symbol("t")

T_TO_ONE = "t->1"
T_TO_INVERSE = "t->1/t"


class CoefficientRing(str, Enum):
    INT = "INT"
    LAURENT_T = "LAURENT_T"
    POLY_QT = "POLY_QT"
    RAT_QT = "RAT_QT"


def join_rings(first: CoefficientRing, second: CoefficientRing) -> CoefficientRing:
    """Smallest ring containing both arguments"""
    if first == second:
        return first
    if first == CoefficientRing.INT:
        return second
    if second == CoefficientRing.INT:
        return first
    return CoefficientRing.RAT_QT


def _format_terms(items: Iterable[Tuple[str, int]]) -> str:
    pieces = []
    for monomial, coeff in items:
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    head_sign, head = pieces[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def _power(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return name
    return f"{name}^{exponent}"


class LaurentT:
    """Element of Z[t, 1/t], stored as t^shift * poly with poly(0) != 0"""

    __slots__ = ("_poly", "_shift")

    def __init__(self, poly=None, shift: int = 0):
        if poly is None:
            poly = T_RING.zero
        elif isinstance(poly, int):
            poly = T_RING(poly)
        if not poly:
            shift = 0
        else:
            low = min(monom[0] for monom in poly.keys())
            if low:
                poly = T_RING.from_dict({(monom[0] - low,): c for monom, c in poly.items()})
                shift += low
        self._poly = poly
        self._shift = shift

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "LaurentT":
        items = {e: c for e, c in terms.items() if c}
        if not items:
            return cls()
        low = min(items)
        return cls(T_RING.from_dict({(e - low,): c for e, c in items.items()}), low)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentT":
        return cls.from_terms({exponent: coeff})

    def terms(self) -> Dict[int, int]:
        return {monom[0] + self._shift: int(c) for monom, c in sorted(self._poly.items())}

    def min_exponent(self) -> Optional[int]:
        return self._shift if self._poly else None

    def max_exponent(self) -> Optional[int]:
        if not self._poly:
            return None
        return self._shift + max(monom[0] for monom in self._poly.keys())

    def as_monomial(self) -> Optional[Tuple[int, int]]:
        """(exponent, coefficient) when the element has a single term"""
        if len(self._poly) != 1:
            return None
        ((monom, coeff),) = self._poly.items()
        return monom[0] + self._shift, int(coeff)

    def is_nonnegative_polynomial(self) -> bool:
        """True when the element lies in N[t]"""
        return (not self._poly or self._shift >= 0) and all(c >= 0 for c in self._poly.values())

    def at_one(self) -> int:
        return int(sum(self._poly.values(), ZZ.zero))

    def invert_t(self) -> "LaurentT":
        return LaurentT.from_terms({-e: c for e, c in self.terms().items()})

    def constant(self) -> Optional[int]:
        """Integer value when the element is constant"""
        if not self._poly:
            return 0
        if self._shift == 0 and len(self._poly) == 1 and (0,) in self._poly:
            return int(self._poly[(0,)])
        return None

    def _aligned(self, other: "LaurentT"):
        gap = self._shift - other._shift
        if gap >= 0:
            return self._poly * T_GEN**gap, other._poly, other._shift
        return self._poly, other._poly * T_GEN ** (-gap), self._shift

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        if not other._poly:
            return self
        if not self._poly:
            return other
        mine, theirs, shift = self._aligned(other)
        return LaurentT(mine + theirs, shift)

    __radd__ = __add__

    def __neg__(self):
        return LaurentT(-self._poly, self._shift)

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return LaurentT(self._poly * other._poly, self._shift + other._shift)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent >= 0:
            return LaurentT(self._poly**exponent, self._shift * exponent)
        single = self.as_monomial()
        if single is None or abs(single[1]) != 1:
            raise UnsupportedRing("negative power of a non-unit Laurent polynomial", {"value": str(self)})
        e, c = single
        return LaurentT.monomial(e * exponent, c ** (-exponent))

    def __bool__(self):
        return bool(self._poly)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.constant() == other
        if isinstance(other, LaurentT):
            return self._shift == other._shift and self._poly == other._poly
        return NotImplemented

    def __hash__(self):
        value = self.constant()
        if value is not None:
            return hash(value)
        return hash((self._shift, tuple(sorted(self.terms().items()))))

    def __str__(self):
        return _format_terms((_power("t", e), c) for e, c in sorted(self.terms().items()))

    def __repr__(self):
        return f"LaurentT({self})"


class PolyQT:
    """Element of Z[q, t]"""

    __slots__ = ("_poly",)

    def __init__(self, poly=None):
        if poly is None:
            poly = QT_RING.zero
        elif isinstance(poly, int):
            poly = QT_RING(poly)
        self._poly = poly

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[int, int], int]) -> "PolyQT":
        for a, b in terms:
            if a < 0 or b < 0:
                raise NotPolynomial("negative exponent in a q,t polynomial", {"monomial": [a, b]})
        return cls(QT_RING.from_dict({monom: c for monom, c in terms.items() if c}))

    @classmethod
    def from_laurent(cls, value: LaurentT) -> "PolyQT":
        return cls.from_terms({(0, e): c for e, c in value.terms().items()})

    @property
    def element(self):
        return self._poly

    def terms(self) -> Dict[Tuple[int, int], int]:
        return {monom: int(c) for monom, c in sorted(self._poly.items())}

    def specialize(self, q: Optional[int] = None, t: Optional[int] = None) -> "PolyQT":
        """Substitute integer values for q and/or t"""
        collected: Dict[Tuple[int, int], int] = {}
        for (a, b), c in self.terms().items():
            weight = c
            if q is not None:
                weight *= q**a
                a = 0
            if t is not None:
                weight *= t**b
                b = 0
            collected[(a, b)] = collected.get((a, b), 0) + weight
        return PolyQT.from_terms(collected)

    def at_q_zero(self) -> LaurentT:
        return LaurentT.from_terms({b: c for (a, b), c in self.terms().items() if a == 0})

    def to_laurent(self) -> LaurentT:
        terms = self.terms()
        if any(a for a, _ in terms):
            raise NotPolynomial("q occurs in a coefficient expected in Z[t]", {"value": str(self)})
        return LaurentT.from_terms({b: c for (_, b), c in terms.items()})

    def constant(self) -> Optional[int]:
        if not self._poly:
            return 0
        if len(self._poly) == 1 and (0, 0) in self._poly:
            return int(self._poly[(0, 0)])
        return None

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._poly.values())

    def dominated_by(self, other: "PolyQT") -> bool:
        """Coefficientwise comparison self <= other"""
        return (other - self).is_nonnegative()

    def __add__(self, other):
        other = _as_polyqt(other)
        if other is None:
            return NotImplemented
        return PolyQT(self._poly + other._poly)

    __radd__ = __add__

    def __neg__(self):
        return PolyQT(-self._poly)

    def __sub__(self, other):
        other = _as_polyqt(other)
        if other is None:
            return NotImplemented
        return PolyQT(self._poly - other._poly)

    def __rsub__(self, other):
        other = _as_polyqt(other)
        if other is None:
            return NotImplemented
        return PolyQT(other._poly - self._poly)

    def __mul__(self, other):
        other = _as_polyqt(other)
        if other is None:
            return NotImplemented
        return PolyQT(self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return PolyQT(self._poly**exponent)

    def __bool__(self):
        return bool(self._poly)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.constant() == other
        if isinstance(other, PolyQT):
            return self._poly == other._poly
        return NotImplemented

    def __hash__(self):
        value = self.constant()
        if value is not None:
            return hash(value)
        return hash(tuple(sorted(self.terms().items())))

    def __str__(self):
        items = sorted(self.terms().items())
        return _format_terms(("*".join(p for p in (_power("q", a), _power("t", b)) if p), c) for (a, b), c in items)

    def __repr__(self):
        return f"PolyQT({self})"


class RatQT:
    """Element of Q(q, t) as a reduced numerator/denominator pair over Z[q, t]"""

    __slots__ = ("_num", "_den")

    def __init__(self, numerator=0, denominator=1):
        num = _raw_qt(numerator)
        den = _raw_qt(denominator)
        if not den:
            raise ZeroDivisionError("RatQT with zero denominator")
        if not num:
            num, den = QT_RING.zero, QT_RING.one
        else:
            num, den = _cancel(num, den)
        self._num = num
        self._den = den

    @property
    def numerator(self) -> PolyQT:
        return PolyQT(self._num)

    @property
    def denominator(self) -> PolyQT:
        return PolyQT(self._den)

    def constant(self) -> Optional[int]:
        if self._den == QT_RING.one:
            return PolyQT(self._num).constant()
        return None

    def substitute_q_by_t(self) -> "RatQT":
        return RatQT(_q_to_t(self._num), _q_to_t(self._den))

    def invert_t(self) -> "RatQT":
        """Substitute t -> 1/t, clearing the common power of t"""
        top = max(b for _, b in list(self._num.keys()) + list(self._den.keys()))

        def reverse(poly):
            return QT_RING.from_dict({(a, top - b): c for (a, b), c in poly.items()})

        return RatQT(reverse(self._num), reverse(self._den))

    def specialize(self, q: Optional[int] = None, t: Optional[int] = None) -> "RatQT":
        den = PolyQT(self._den).specialize(q, t)
        if not den:
            raise ZeroDivisionError("specialization annihilates the denominator")
        return RatQT(PolyQT(self._num).specialize(q, t), den)

    def __add__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        if self._den == other._den:
            return RatQT(self._num + other._num, self._den)
        return RatQT(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        result = RatQT.__new__(RatQT)
        result._num = -self._num
        result._den = self._den
        return result

    def __sub__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        return RatQT(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        if not other._num:
            raise ZeroDivisionError("division by zero in Q(q,t)")
        return RatQT(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        return other / self

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        other = _as_ratqt(other)
        if other is None:
            return NotImplemented
        return self._num * other._den == other._num * self._den

    def __hash__(self):
        value = self.constant()
        if value is not None:
            return hash(value)
        return hash((PolyQT(self._num), PolyQT(self._den)))

    def __str__(self):
        if self._den == QT_RING.one:
            return str(PolyQT(self._num))
        return f"({PolyQT(self._num)})/({PolyQT(self._den)})"

    def __repr__(self):
        return f"RatQT({self})"


Coefficient = Union[int, LaurentT, PolyQT, RatQT]


def _raw_qt(value):
    if isinstance(value, int):
        return QT_RING(value)
    if isinstance(value, PolyQT):
        return value.element
    if isinstance(value, LaurentT):
        terms = value.terms()
        if terms and min(terms) < 0:
            raise NotPolynomial("negative t exponent in a q,t polynomial", {"value": str(value)})
        return QT_RING.from_dict({(0, e): c for e, c in terms.items()}) if terms else QT_RING.zero
    return value


def _cancel(num, den):
    """Divide out gcd(num, den); the denominator ends with a positive leading coefficient"""
    try:
        return num.cancel(den)
    except HeuristicGCDFailed:
        # the dense inner gcd falls back to subresultant PRS
        _, num, den = QT_RING.dmp_inner_gcd(num, den)
        if den.LC < 0:
            num, den = -num, -den
        return num, den


def _q_to_t(poly):
    collected: Dict[Tuple[int, int], int] = {}
    for (a, b), c in poly.items():
        collected[(0, a + b)] = collected.get((0, a + b), 0) + int(c)
    return QT_RING.from_dict({m: c for m, c in collected.items() if c})


def _as_laurent(value) -> Optional[LaurentT]:
    if isinstance(value, LaurentT):
        return value
    if isinstance(value, int):
        return LaurentT(value)
    return None


def _as_polyqt(value) -> Optional[PolyQT]:
    if isinstance(value, PolyQT):
        return value
    if isinstance(value, int):
        return PolyQT(value)
    return None


def _as_ratqt(value) -> Optional[RatQT]:
    if isinstance(value, RatQT):
        return value
    if isinstance(value, (int, PolyQT)):
        return RatQT(value)
    if isinstance(value, LaurentT):
        low = value.min_exponent() or 0
        if low >= 0:
            return RatQT(value)
        return RatQT(value * LaurentT.monomial(-low), QT_T_GEN ** (-low))
    return None


def ring_of(value: Coefficient) -> CoefficientRing:
    if isinstance(value, bool):
        raise UnsupportedRing("booleans are not coefficients")
    if isinstance(value, int):
        return CoefficientRing.INT
    if isinstance(value, LaurentT):
        return CoefficientRing.LAURENT_T
    if isinstance(value, PolyQT):
        return CoefficientRing.POLY_QT
    if isinstance(value, RatQT):
        return CoefficientRing.RAT_QT
    raise UnsupportedRing(f"unsupported coefficient type {type(value).__name__}")


def coerce(value: Coefficient, target: CoefficientRing) -> Coefficient:
    """Widen a coefficient into target; narrowing raises UnsupportedRing"""
    source = ring_of(value)
    if source == target:
        return value
    if join_rings(source, target) != target:
        raise UnsupportedRing(
            f"cannot narrow {source.value} to {target.value}",
            {"value": str(value)},
        )
    if target == CoefficientRing.LAURENT_T:
        return LaurentT(value)
    if target == CoefficientRing.POLY_QT:
        return PolyQT(value)
    return _as_ratqt(value)


def zero_of(target: CoefficientRing) -> Coefficient:
    return coerce(0, target)


def one_of(target: CoefficientRing) -> Coefficient:
    return coerce(1, target)


def specialize(value: Union[int, LaurentT], mode: str) -> Union[int, LaurentT]:
    if mode == T_TO_ONE:
        return value if isinstance(value, int) else value.at_one()
    if mode == T_TO_INVERSE:
        return value if isinstance(value, int) else value.invert_t()
    raise InvalidInput(f"unknown specialization {mode!r}")


def ratqt_to_poly(value: RatQT) -> PolyQT:
    """Certify that a rational function is a polynomial in q, t"""
    numerator, denominator = value.numerator.element, value.denominator.element
    try:
        return PolyQT(numerator.exquo(denominator))
    except ExactQuotientFailed:
        raise NotPolynomial("rational function is not a polynomial", {"value": str(value)})


def ratqt_to_laurent(value: RatQT) -> LaurentT:
    """Certify that a rational function lies in Z[t, 1/t]"""
    denominator = value.denominator.terms()
    if len(denominator) != 1:
        raise NotPolynomial("denominator is not a monomial in t", {"value": str(value)})
    ((a, b), c) = next(iter(denominator.items()))
    if a != 0 or abs(c) != 1:
        raise NotPolynomial("denominator is not a unit monomial in t", {"value": str(value)})
    numerator = value.numerator.to_laurent()
    return numerator * LaurentT.monomial(-b, c)


def narrow(value: Coefficient, target: CoefficientRing) -> Coefficient:
    """Explicit exactness-checked narrowing"""
    source = ring_of(value)
    if join_rings(source, target) == target:
        return coerce(value, target)
    if target == CoefficientRing.INT:
        constant = value.constant()
        if constant is None:
            raise NotPolynomial("coefficient is not an integer", {"value": str(value)})
        return constant
    if source == CoefficientRing.RAT_QT and target == CoefficientRing.POLY_QT:
        return ratqt_to_poly(value)
    if source == CoefficientRing.RAT_QT and target == CoefficientRing.LAURENT_T:
        return ratqt_to_laurent(value)
    if source == CoefficientRing.POLY_QT and target == CoefficientRing.LAURENT_T:
        return value.to_laurent()
    if source == CoefficientRing.LAURENT_T and target == CoefficientRing.POLY_QT:
        return PolyQT.from_laurent(value)
    raise UnsupportedRing(f"no narrowing from {source.value} to {target.value}")


def encode(value: Coefficient):
    """JSON payload: decimal strings keyed by monomial text"""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, LaurentT):
        return {f"t^{e}": str(c) for e, c in sorted(value.terms().items())}
    if isinstance(value, PolyQT):
        return {f"q^{a} t^{b}": str(c) for (a, b), c in sorted(value.terms().items())}
    if isinstance(value, RatQT):
        return {"num": encode(value.numerator), "den": encode(value.denominator)}
    raise UnsupportedRing(f"cannot encode {type(value).__name__}")


def decode(payload, target: CoefficientRing) -> Coefficient:
    try:
        if target == CoefficientRing.INT:
            return int(payload)
        if target == CoefficientRing.LAURENT_T:
            return LaurentT.from_terms({int(key[2:]): int(c) for key, c in payload.items()})
        if target == CoefficientRing.POLY_QT:
            terms = {}
            for key, c in payload.items():
                q_part, t_part = key.split()
                terms[(int(q_part[2:]), int(t_part[2:]))] = int(c)
            return PolyQT.from_terms(terms)
        return RatQT(
            decode(payload["num"], CoefficientRing.POLY_QT),
            decode(payload["den"], CoefficientRing.POLY_QT),
        )
    except (KeyError, ValueError, TypeError, AttributeError) as e:
        raise InvalidInput(f"malformed {target.value} payload", {"error": str(e)})


def parse_coefficient(text: str, target: CoefficientRing) -> Coefficient:
    """Parse text such as ``t+t^2`` or ``q + q^2*t`` into the target ring"""
    try:
        expression = expand(sympify(text.replace("^", "**"), locals={"q": _Q_SYMBOL, "t": _T_SYMBOL}))
    except (SympifyError, SyntaxError, TypeError) as e:
        raise InvalidInput(f"cannot parse coefficient {text!r}", {"error": str(e)})
    if expression.free_symbols - {_Q_SYMBOL, _T_SYMBOL}:
        raise InvalidInput(f"unknown symbols in {text!r}")

    terms: Dict[Tuple[int, int], int] = {}
    for monomial, coeff in expression.as_coefficients_dict().items():
        powers = monomial.as_powers_dict()
        exponents = (powers.get(_Q_SYMBOL, 0), powers.get(_T_SYMBOL, 0))
        if not coeff.is_Integer or not all(getattr(e, "is_Integer", isinstance(e, int)) for e in exponents):
            raise InvalidInput(f"non-integral term in {text!r}")
        key = (int(exponents[0]), int(exponents[1]))
        terms[key] = terms.get(key, 0) + int(coeff)

    if target == CoefficientRing.INT:
        return narrow(PolyQT.from_terms(terms), CoefficientRing.INT)
    if target == CoefficientRing.LAURENT_T:
        if any(a for a, _ in terms):
            raise InvalidInput(f"q occurs in Laurent coefficient {text!r}")
        return LaurentT.from_terms({b: c for (_, b), c in terms.items()})
    if target == CoefficientRing.POLY_QT:
        return PolyQT.from_terms(terms)
    if any(a < 0 or b < 0 for a, b in terms):
        raise InvalidInput(f"negative exponents are not supported for {target.value}")
    return RatQT(PolyQT.from_terms(terms))
