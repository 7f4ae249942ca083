"""Registry of verification checks.

A check enumerates picklable cases for a (k, max_degree) range and evaluates
one case at a time. Theorem checks report PASS/FAIL; conjecture checks report
HOLDS/COUNTEREXAMPLE and never fail a run.
"""

from math import factorial
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from app.models.coefficients import T_TO_ONE, CoefficientRing, LaurentT, PolyQT
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.processors.basis_converter import basis_converter
from app.processors.littlewood_richardson import PIERI_E, PIERI_H, _accumulate, lr_processor
from app.processors.partition_combinatorics import (
    conjugate,
    dominance_leq,
    is_k_irreducible,
    k_conjugate,
    k_irreducible_partitions,
    k_rectangle,
    k_split,
    main_hook,
    partitions_of,
    union,
)
from app.processors.plethysm import plethysm_processor
from app.schemas.documents import (
    CONJECTURE,
    COUNTEREXAMPLE,
    ERROR,
    FAIL,
    HOLDS,
    PASS,
    THEOREM,
    CaseResult,
)
from app.services.kschur_service import kschur_service
from app.services.macdonald_service import macdonald_service
from app.services.table_service import table_service
from app.services.vertex_service import morris_service, vertex_service
from app.utils.errors import KSchurError, NotInSubspace, TheoremViolation
from app.utils.logger import setup_logger

logger = setup_logger("checks")

Outcome = Tuple[bool, Dict]


class CheckDefinition(NamedTuple):
    name: str
    kind: str
    cases: Callable[[int, int], List[Tuple]]
    evaluate: Callable[..., Outcome]
    default_k: int
    default_max_degree: int


def _p(text: str) -> Partition:
    return Partition.parse(text)


def _bounded_cases(k: int, max_degree: int, min_degree: int = 1) -> List[Tuple]:
    return [
        (kk, lam.to_text())
        for kk in range(1, k + 1)
        for n in range(min_degree, max_degree + 1)
        for lam in partitions_of(n, kk)
    ]


def _schur_product(parts) -> SymExpansion:
    product = SymExpansion.one()
    for lam in parts:
        product = lr_processor.schur_multiply(product, SymExpansion.monomial(Basis.SCHUR, lam))
    return product


def _unitriangular(f: SymExpansion, lam: Partition, k: Optional[int] = None) -> bool:
    if f.coefficient(lam) != 1:
        return False
    return all(dominance_leq(lam, mu) and (k is None or mu.part(0) <= k) for mu in f)


# involution and combinatorics


def omega_k_involution(k: int, n: int) -> Outcome:
    failures = []
    checked = 0
    for lam in partitions_of(n, k):
        checked += 1
        image = k_conjugate(lam, k)
        if k_conjugate(image, k) != lam or image.degree != n or image.part(0) > k:
            failures.append(lam.to_text())
        elif lam and main_hook(lam) <= k and image != conjugate(lam):
            failures.append(lam.to_text())
    return not failures, {"checked": checked, "failures": failures[:10]}


def irreducible_count(k: int) -> Outcome:
    found = k_irreducible_partitions(k)
    return len(found) == factorial(k), {"count": len(found), "expected": factorial(k)}


# vertex operators and generalized Kostka polynomials


def morris_vs_vertex(k: int, text: str) -> Outcome:
    sequence = k_split(_p(text), k)
    vertex = vertex_service.h_s(sequence)
    oracle = morris_service.morris_kostka(sequence)
    support = set(vertex) | set(oracle)
    mismatches = [mu.to_text() for mu in support if vertex.coefficient(mu) != oracle.get(mu, LaurentT())]

    at_one = SymExpansion(Basis.SCHUR, {mu: c.at_one() for mu, c in oracle.items()})
    product_ok = at_one == _schur_product(sequence)
    return not mismatches and product_ok, {
        "sequence": sequence.to_text(),
        "mismatches": sorted(mismatches),
        "product_at_one": product_ok,
    }


def morris_vanishing(k: int, text: str) -> Outcome:
    lam = _p(text)
    sequence = k_split(lam, k)
    coefficients = morris_service.morris_kostka(sequence)
    leading = coefficients.get(lam) == 1
    smaller = [mu.to_text() for mu in coefficients if not dominance_leq(lam, mu)]
    return leading and not smaller, {"sequence": sequence.to_text(), "leading_one": leading, "below": smaller}


# k-Schur functions


def tables(kind: str, k: int, degree: int) -> Outcome:
    expected = table_service.fixture(kind, k, degree)
    mismatches = table_service.compare(table_service.build_table(kind, k, degree), expected)
    return not mismatches, {"table": f"{kind} k={k} n={degree}", "mismatches": mismatches}


def rectangle_theorem(k: int, text: str, ell: int) -> Outcome:
    lam = _p(text)
    c = kschur_service.rectangle_action(k, ell, lam)
    rectangle = k_rectangle(k, ell)
    rectangle_schur = SymExpansion.monomial(Basis.SCHUR, rectangle)
    product = lr_processor.schur_multiply(rectangle_schur, kschur_service.k_schur_t1(k, lam))
    at_one = product == kschur_service.k_schur_t1(k, union(lam, rectangle))
    return at_one, {"c": c, "rectangle": rectangle.to_text(), "product_at_one": at_one}


def t1_consistency(k: int, text: str) -> Outcome:
    lam = _p(text)
    specialized = kschur_service.k_schur(k, lam).specialize_t(T_TO_ONE)
    return specialized == kschur_service.k_schur_t1(k, lam), {}


def unitriangularity(k: int, text: str) -> Outcome:
    lam = _p(text)
    schur = kschur_service.k_schur(k, lam)
    in_g = kschur_service.to_g_basis(k, schur)
    in_hall = vertex_service.to_hall_littlewood_basis(kschur_service.k_split_poly(k, lam))
    in_h = basis_converter.to_basis(kschur_service.k_schur_t1(k, lam), Basis.H)
    head = SymExpansion.monomial(Basis.SCHUR, Partition([k]))
    raised = lr_processor.schur_multiply(head, kschur_service.k_schur_t1(k, lam))

    detail = {
        "kschur_over_schur": _unitriangular(schur, lam),
        "kschur_over_ksplit": _unitriangular(in_g, lam) and all(mu.part(0) == lam.part(0) for mu in in_g),
        "ksplit_over_hall": _unitriangular(in_hall, lam, k),
        "kschur_t1_over_h": _unitriangular(in_h, lam, k),
        "row_multiplication": raised == kschur_service.k_schur_t1(k, Partition((k,) + tuple(lam))),
    }
    return all(detail.values()), detail


def degeneration(k: int, text: str) -> Outcome:
    lam = _p(text)
    hall = vertex_service.hall_littlewood(lam)
    sequence = k_split(lam, k)
    detail = {
        "hall_at_one": hall.specialize_t(T_TO_ONE) == basis_converter.h_to_schur(lam),
        "hall_positive": all(c.is_nonnegative_polynomial() for _, c in hall.items()),
        "hs_at_one": vertex_service.h_s(sequence).specialize_t(T_TO_ONE) == _schur_product(sequence),
    }
    if main_hook(lam) <= k:
        single = SymExpansion.monomial(Basis.SCHUR, lam, LaurentT(1))
        detail["small_hook"] = (
            kschur_service.k_schur(k, lam) == single and kschur_service.k_split_poly(k, lam) == single
        )
    if k == lam.part(0):
        h_lam = macdonald_service.macdonald_h(lam)
        at_q_zero = h_lam.map_coefficients(PolyQT.at_q_zero, ring=CoefficientRing.LAURENT_T)
        detail["macdonald_at_q_zero"] = at_q_zero == hall
    return all(detail.values()), detail


def quotient_basis(k: int, text: str) -> Outcome:
    lam = _p(text)
    reduced = kschur_service.quotient_reduce(k, kschur_service.k_schur_t1(k, lam))
    if is_k_irreducible(lam, k):
        expected = SymExpansion.monomial(Basis.KSCHUR_T1, lam, k=k)
    else:
        expected = SymExpansion.zero(Basis.KSCHUR_T1, k=k)
    ideal = []
    for ell in range(1, k + 1):
        rectangle = SymExpansion.monomial(Basis.SCHUR, k_rectangle(k, ell))
        product = lr_processor.schur_multiply(rectangle, kschur_service.k_schur_t1(k, lam))
        if kschur_service.quotient_reduce(k, product):
            ideal.append(ell)
    return reduced == expected and not ideal, {"irreducible": is_k_irreducible(lam, k), "ideal_failures": ideal}


def irreducible_factorization(k: int, text: str) -> Outcome:
    lam = _p(text)
    core, rectangles, t_power = kschur_service.irreducible_factorization(k, lam)
    product = lr_processor.schur_multiply(_schur_product(rectangles), kschur_service.k_schur_t1(k, core))
    ok = product == kschur_service.k_schur_t1(k, lam)
    return ok, {"core": core.to_text(), "rectangles": [r.to_text() for r in rectangles], "t_power": t_power}


# Macdonald


def macdonald_refinement(k: int, text: str) -> Outcome:
    lam = _p(text)
    coefficients = macdonald_service.kschur_qt_kostka(k, lam)
    rebuilt = basis_converter.to_schur(SymExpansion(Basis.KSCHUR, coefficients, CoefficientRing.POLY_QT, k))
    refined = rebuilt.narrow(CoefficientRing.POLY_QT) == macdonald_service.macdonald_h(lam)

    alternative = sorted(partitions_of(lam.degree), key=conjugate, reverse=True)
    independent = macdonald_service.macdonald_p(lam, alternative) == macdonald_service.macdonald_p(lam)
    return refined and independent, {"refinement": refined, "order_independent": independent}


# conjectures


def positivity_v(k: int, text: str) -> Outcome:
    expansion = kschur_service.k_schur(k, _p(text))
    negative = [mu.to_text() for mu, c in expansion.items() if not c.is_nonnegative_polynomial()]
    return not negative, {"negative": negative}


def positivity_kqt(k: int, text: str) -> Outcome:
    lam = _p(text)
    refined = macdonald_service.kschur_qt_kostka(k, lam)
    classical = macdonald_service.qt_kostka(lam)
    negative = [mu.to_text() for mu, c in refined.items() if not c.is_nonnegative()]
    exceeding = [mu.to_text() for mu, c in refined.items() if not c.dominated_by(classical.get(mu, PolyQT()))]
    return not negative and not exceeding, {"negative": negative, "exceeding": exceeding}


def pieri_conjecture(k: int, text: str, ell: int, kind: str) -> Outcome:
    lam = _p(text)
    product = lr_processor.pieri(kschur_service.k_schur_t1(k, lam), ell, kind)
    expansion = kschur_service.to_kschur_basis_t1(k, product)
    predicted = set(kschur_service.pieri_sets(k, lam, ell, kind))
    ok = set(expansion) == predicted and all(c == 1 for _, c in expansion.items())
    return ok, {
        "predicted": sorted(mu.to_text() for mu in predicted),
        "observed": {mu.to_text(): str(c) for mu, c in expansion.sorted_terms()},
    }


def omega_t_conjecture(k: int, text: str) -> Outcome:
    lam = _p(text)
    image = k_conjugate(lam, k)

    at_one = kschur_service.to_kschur_basis_t1(k, plethysm_processor.omega(kschur_service.k_schur_t1(k, lam)))
    plain = at_one == SymExpansion.monomial(Basis.KSCHUR_T1, image, k=k)

    twisted = kschur_service.to_kschur_basis(k, plethysm_processor.omega(kschur_service.k_schur(k, lam), twisted=True))
    single = twisted.coefficient(image).as_monomial() if len(twisted) == 1 and image in twisted else None
    c = -single[0] if single and single[1] == 1 else None
    return plain and c is not None and c >= 0, {"k_conjugate": image.to_text(), "c": c, "omega_at_one": plain}


def coproduct_conjecture(k: int, text: str) -> Outcome:
    tensor: Dict[Tuple[Partition, Partition], LaurentT] = {}
    for nu, c in kschur_service.k_schur(k, _p(text)).items():
        for (alpha, beta), d in lr_processor.coproduct(nu).items():
            _accumulate(tensor, (alpha, beta), c * d)

    by_right: Dict[Partition, Dict[Partition, LaurentT]] = {}
    for (alpha, beta), c in tensor.items():
        by_right.setdefault(beta, {})[alpha] = c
    by_left: Dict[Partition, Dict[Partition, LaurentT]] = {}
    for beta, column in by_right.items():
        leg = SymExpansion(Basis.SCHUR, column, CoefficientRing.LAURENT_T)
        for mu, c in kschur_service.to_kschur_basis(k, leg).items():
            by_left.setdefault(mu, {})[beta] = c

    negative = []
    for mu, row in by_left.items():
        leg = SymExpansion(Basis.SCHUR, row, CoefficientRing.LAURENT_T)
        for rho, g in kschur_service.to_kschur_basis(k, leg).items():
            if not g.is_nonnegative_polynomial():
                negative.append(f"{mu.to_text()}|{rho.to_text()}")
    return not negative, {"negative": negative}


def branching_positivity(k: int, text: str) -> Outcome:
    lam = _p(text)
    expansion = kschur_service.to_kschur_basis(k + 1, kschur_service.k_schur(k, lam))
    leading = expansion.coefficient(lam) == 1
    negative = [mu.to_text() for mu, c in expansion.items() if not c.is_nonnegative_polynomial()]
    return leading and not negative, {"target_k": k + 1, "leading_one": leading, "negative": negative}


def klr_bounds(k: int, left: str, right: str) -> Outcome:
    lam, mu = _p(left), _p(right)
    refined = kschur_service.k_schur_product_t1(k, lam, mu)
    classical = lr_processor.lr_product(lam, mu)
    outside = [nu.to_text() for nu, c in refined.items() if not 0 <= c <= classical.get(nu, 0)]
    return not outside, {"outside": outside}


# case enumerations


def _range_cases(k: int, max_degree: int) -> List[Tuple]:
    return [(kk, n) for kk in range(1, k + 1) for n in range(0, max_degree + 1)]


def _table_cases(k: int, max_degree: int) -> List[Tuple]:
    return [key for key in sorted(table_service.fixtures()) if key[1] <= k and key[2] <= max_degree]


def _rectangle_cases(k: int, max_degree: int) -> List[Tuple]:
    return [(kk, text, ell) for kk, text in _bounded_cases(k, max_degree, 0) for ell in range(1, kk + 1)]


def _pieri_cases(k: int, max_degree: int) -> List[Tuple]:
    found = [
        (kk, text, ell, kind)
        for kk, text in _bounded_cases(k, max_degree, 0)
        for ell in range(1, kk + 1)
        if _p(text).degree + ell <= max_degree
        for kind in (PIERI_H, PIERI_E)
    ]
    worked = (4, "3,2,1", 2, PIERI_E)
    return found if worked in found else found + [worked]


def _klr_cases(k: int, max_degree: int) -> List[Tuple]:
    found = []
    for kk, left in _bounded_cases(k, max_degree):
        for n in range(1, max_degree - _p(left).degree + 1):
            for mu in partitions_of(n, kk):
                if mu <= _p(left):
                    found.append((kk, left, mu.to_text()))
    return found


def _macdonald_cases(k: int, max_degree: int) -> List[Tuple]:
    return [(kk, text) for kk, text in _bounded_cases(k, max_degree) if kk >= 2]


def _irreducible_cases(k: int, max_degree: int) -> List[Tuple]:
    return [(kk,) for kk in range(1, k + 1)]


CHECKS: Dict[str, CheckDefinition] = {
    definition.name: definition
    for definition in (
        CheckDefinition("omega-k-involution", THEOREM, _range_cases, omega_k_involution, 6, 12),
        CheckDefinition("morris-vs-vertex", THEOREM, _bounded_cases, morris_vs_vertex, 4, 7),
        CheckDefinition("tables", THEOREM, _table_cases, tables, 4, 6),
        CheckDefinition("rectangle-theorem", THEOREM, _rectangle_cases, rectangle_theorem, 3, 5),
        CheckDefinition("t1-consistency", THEOREM, _bounded_cases, t1_consistency, 3, 7),
        CheckDefinition("unitriangularity", THEOREM, _bounded_cases, unitriangularity, 3, 6),
        CheckDefinition("degeneration", THEOREM, _bounded_cases, degeneration, 3, 6),
        CheckDefinition("morris-vanishing", THEOREM, _bounded_cases, morris_vanishing, 4, 7),
        CheckDefinition("irreducible-count", THEOREM, _irreducible_cases, irreducible_count, 5, 0),
        CheckDefinition("quotient-basis", THEOREM, _bounded_cases, quotient_basis, 3, 6),
        CheckDefinition("irreducible-factorization", THEOREM, _bounded_cases, irreducible_factorization, 3, 6),
        CheckDefinition("macdonald-refinement", THEOREM, _macdonald_cases, macdonald_refinement, 3, 5),
        CheckDefinition("positivity-v", CONJECTURE, _bounded_cases, positivity_v, 4, 7),
        CheckDefinition("positivity-kqt", CONJECTURE, _macdonald_cases, positivity_kqt, 3, 6),
        CheckDefinition("pieri-conjecture", CONJECTURE, _pieri_cases, pieri_conjecture, 3, 6),
        CheckDefinition("omega-t-conjecture", CONJECTURE, _bounded_cases, omega_t_conjecture, 3, 6),
        CheckDefinition("coproduct-conjecture", CONJECTURE, _bounded_cases, coproduct_conjecture, 2, 5),
        CheckDefinition("branching-positivity", CONJECTURE, _bounded_cases, branching_positivity, 2, 6),
        CheckDefinition("klr-bounds", CONJECTURE, _klr_cases, klr_bounds, 3, 6),
    )
}


def case_label(params: Tuple) -> str:
    return " ".join(str(p) if p != "" else "()" for p in params)


def run_case(check: str, params: Tuple) -> Dict:
    """Evaluate one case; module-level so worker processes can import it"""
    definition = CHECKS[check]
    label = case_label(params)
    holds, broken = (PASS, FAIL) if definition.kind == THEOREM else (HOLDS, COUNTEREXAMPLE)
    try:
        ok, detail = definition.evaluate(*params)
        verdict = holds if ok else broken
    except TheoremViolation as e:
        verdict, detail = FAIL, e.to_dict()
    except NotInSubspace as e:
        verdict, detail = (broken if definition.kind == CONJECTURE else FAIL), e.to_dict()
    except KSchurError as e:
        verdict, detail = ERROR, e.to_dict()
    except Exception as e:
        logger.log_error("Case raised an unexpected error", check=check, case=label, error=repr(e))
        verdict, detail = ERROR, {"error": type(e).__name__, "message": str(e)}

    logger.log_check_result(check, label, verdict)
    return CaseResult(case=label, verdict=verdict, detail=detail).model_dump(mode="json")
