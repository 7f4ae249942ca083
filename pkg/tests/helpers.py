from hypothesis import strategies as st

from app.models.coefficients import CoefficientRing, LaurentT, PolyQT, RatQT, parse_coefficient
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition


def P(text: str) -> Partition:
    return Partition.parse(text)


def lt(text: str) -> LaurentT:
    return parse_coefficient(text, CoefficientRing.LAURENT_T)


def qt(text: str):
    return parse_coefficient(text, CoefficientRing.POLY_QT)


def schur(terms, ring=None) -> SymExpansion:
    """SCHUR expansion from {"2,1": coefficient-or-text}"""
    parsed = {}
    for index, coeff in terms.items():
        if isinstance(coeff, str):
            coeff = parse_coefficient(coeff, ring or CoefficientRing.LAURENT_T)
        parsed[P(index)] = coeff
    return SymExpansion(Basis.SCHUR, parsed, ring)


@st.composite
def partitions(draw, max_degree: int = 7, max_part=None):
    """Partitions of degree <= max_degree, parts bounded by max_part when given"""
    bound = max_part or max_degree
    parts = []
    remaining = draw(st.integers(min_value=0, max_value=max_degree))
    while remaining > 0:
        ceiling = min(remaining, bound, parts[-1] if parts else bound)
        part = draw(st.integers(min_value=1, max_value=ceiling))
        parts.append(part)
        remaining -= part
    return Partition(parts)


@st.composite
def k_bounded(draw, max_k: int = 4, max_degree: int = 7):
    k = draw(st.integers(min_value=1, max_value=max_k))
    return k, draw(partitions(max_degree, k))


laurent_polynomials = st.dictionaries(
    st.integers(min_value=-3, max_value=4),
    st.integers(min_value=-5, max_value=5),
    max_size=4,
).map(LaurentT.from_terms)

qt_polynomials = st.dictionaries(
    st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)),
    st.integers(min_value=-4, max_value=4),
    max_size=4,
).map(PolyQT.from_terms)

rational_functions = st.tuples(qt_polynomials, qt_polynomials.filter(bool)).map(lambda pair: RatQT(*pair))
