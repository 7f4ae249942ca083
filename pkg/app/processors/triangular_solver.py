from typing import Callable, Dict, Iterable, Optional

from app.models.coefficients import Coefficient, CoefficientRing, coerce, join_rings
from app.models.expansion import Basis, SymExpansion
from app.models.partition import Partition
from app.utils.errors import NotInSubspace, TheoremViolation


def solve_unitriangular(
    target: SymExpansion,
    row: Callable[[Partition], SymExpansion],
    candidates: Callable[[int], Iterable[Partition]],
    basis: Basis,
    k: Optional[int] = None,
    row_ring: CoefficientRing = CoefficientRing.INT,
) -> SymExpansion:
    """Express target (in the rows' basis) as a combination of unitriangular rows.

    ``candidates(d)`` lists the admissible indices of degree d in elimination
    order; every row(lam) must equal lam plus terms indexed only by partitions
    that come later in that order (a linear extension of dominance).
    """
    ring = join_rings(target.ring, row_ring)
    solution: Dict[Partition, Coefficient] = {}

    for degree, component in target.homogeneous_components().items():
        residual = {lam: coerce(c, ring) for lam, c in component.items()}
        for lam in candidates(degree):
            coeff = residual.get(lam)
            if not coeff:
                continue
            expansion = row(lam)
            if expansion.coefficient(lam) != 1:
                raise TheoremViolation(
                    "basis row is not unitriangular",
                    {"index": lam.to_text(), "diagonal": str(expansion.coefficient(lam))},
                )
            solution[lam] = coeff
            for mu, entry in expansion.items():
                updated = residual.get(mu, 0) - coeff * coerce(entry, ring)
                if updated:
                    residual[mu] = updated
                else:
                    residual.pop(mu, None)

        if residual:
            leftover = sorted(residual)[0]
            raise NotInSubspace(
                "nonzero residual after triangular elimination",
                {
                    "basis": basis.value,
                    "k": k,
                    "degree": degree,
                    "residual_index": leftover.to_text(),
                    "residual_terms": len(residual),
                },
            )

    return SymExpansion(basis, solution, ring, k)
