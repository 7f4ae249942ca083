"""Partition combinatorics: dominance, conjugation, hooks, k-splits,
k-multiplication, k-conjugation, strips, irreducibility and enumeration."""

from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Tuple

from pydantic import ValidationError

from app.models.partition import Partition, PartitionSequence, SkewShape
from app.utils.errors import DegreeMismatch, EmptyPartition, InvalidInput, NotKBounded

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

ALL_K_BOUNDED = "all-k-bounded"
K_IRREDUCIBLE = "k-irreducible"


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    if lam.degree != mu.degree:
        raise DegreeMismatch(
            "dominance is only defined for partitions of equal degree",
            {"lambda": lam.to_text(), "mu": mu.to_text()},
        )
    left = right = 0
    for i in range(max(len(lam), len(mu))):
        left += lam.part(i)
        right += mu.part(i)
        if left > right:
            return False
    return True


def dominance_lt(lam: Partition, mu: Partition) -> bool:
    return lam != mu and dominance_leq(lam, mu)


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for part in lam if part >= i) for i in range(1, lam[0] + 1))


def main_hook(lam: Partition) -> int:
    if not lam:
        raise EmptyPartition("main hook of the empty partition is undefined")
    return lam[0] + len(lam) - 1


def union(lam: Partition, mu: Partition) -> Partition:
    """lambda ∪ mu: the parts of both, sorted"""
    return Partition(sorted(lam + mu, reverse=True))


def contains(outer: Partition, inner: Partition) -> bool:
    return len(inner) <= len(outer) and all(inner[i] <= outer[i] for i in range(len(inner)))


def arm(lam: Partition, row: int, column: int) -> int:
    return lam[row] - column - 1


def leg(lam: Partition, row: int, column: int) -> int:
    return conjugate(lam)[column] - row - 1


def cells(lam: Partition) -> Iterator[Tuple[int, int]]:
    for row, part in enumerate(lam):
        for column in range(part):
            yield row, column


def check_k_bounded(lam: Partition, k: int):
    if k < 1:
        raise InvalidInput(f"k must be positive, got {k}")
    if lam and lam[0] > k:
        raise NotKBounded(f"partition {lam.to_text()!r} is not {k}-bounded", {"k": k, "index": lam.to_text()})


@lru_cache(maxsize=None)
def k_split(lam: Partition, k: int) -> PartitionSequence:
    """Greedy front-to-back cut into blocks of main hook exactly k (last block <= k)"""
    check_k_bounded(lam, k)
    blocks: List[List[int]] = []
    current: List[int] = []
    for part in lam:
        if current and current[0] + len(current) > k:
            blocks.append(current)
            current = []
        current.append(part)
    if current:
        blocks.append(current)
    return PartitionSequence(blocks)


def k_multiply(m: int, shape: SkewShape, k: int) -> SkewShape:
    """Prepend a column of m cells, overlapping the top rows as much as the hook bound allows"""
    if m < 1 or m > k:
        raise InvalidInput(f"k-multiplication needs 1 <= m <= k, got m={m}, k={k}")
    if shape.max_hook() > k:
        raise InvalidInput(f"skew shape has a hook larger than {k}", {"rows": shape.rows})

    shifted = [(start + 1, end + 1) for start, end in shape.rows]
    height = len(shifted)
    for overlap in range(min(m, height), -1, -1):
        top = shifted[height - overlap:]
        if any(start != 1 for start, _ in top):
            continue
        rows = shifted[: height - overlap] + [(0, end) for _, end in top] + [(0, 1)] * (m - overlap)
        try:
            candidate = SkewShape(rows=tuple(rows))
        except ValidationError:
            continue
        if candidate.max_hook() <= k:
            return candidate
    raise InvalidInput(f"no admissible placement for {m} x^({k}) shape", {"rows": shape.rows})


@lru_cache(maxsize=None)
def k_conjugate(lam: Partition, k: int) -> Partition:
    check_k_bounded(lam, k)
    shape = SkewShape()
    for part in reversed(lam):
        shape = k_multiply(part, shape, k)
    return Partition(shape.row_lengths)


def strip_test(lam: Partition, mu: Partition, r: int, kind: str) -> bool:
    if not contains(mu, lam) or mu.degree - lam.degree != r:
        return False
    if kind == HORIZONTAL:
        return all(mu.part(i + 1) <= lam.part(i) for i in range(len(mu)))
    if kind == VERTICAL:
        return all(mu.part(i) - lam.part(i) <= 1 for i in range(len(mu)))
    raise InvalidInput(f"unknown strip kind {kind!r}")


@lru_cache(maxsize=None)
def horizontal_strips(lam: Partition, r: int) -> Tuple[Partition, ...]:
    """All mu with mu/lam a horizontal r-strip"""
    found: List[Partition] = []
    bounds = [None] + list(lam)
    padded = list(lam) + [0]

    def place(row: int, remaining: int, parts: List[int]):
        if row == len(padded):
            if remaining == 0:
                found.append(Partition(p for p in parts if p))
            return
        ceiling = remaining if bounds[row] is None else min(remaining, bounds[row] - padded[row])
        for extra in range(ceiling, -1, -1):
            place(row + 1, remaining - extra, parts + [padded[row] + extra])

    if r >= 0:
        place(0, r, [])
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def vertical_strips(lam: Partition, r: int) -> Tuple[Partition, ...]:
    return tuple(sorted(conjugate(mu) for mu in horizontal_strips(conjugate(lam), r)))


def add_strips(lam: Partition, r: int, kind: str) -> Tuple[Partition, ...]:
    if kind == HORIZONTAL:
        return horizontal_strips(lam, r)
    if kind == VERTICAL:
        return vertical_strips(lam, r)
    raise InvalidInput(f"unknown strip kind {kind!r}")


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: Optional[int] = None) -> Tuple[Partition, ...]:
    """Partitions of n with parts <= max_part, in increasing lexicographic order"""
    if n < 0:
        return ()
    bound = n if max_part is None else min(n, max_part)

    def build(remaining: int, ceiling: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, ceiling), 0, -1):
            for rest in build(remaining - first, first):
                yield (first,) + rest

    return tuple(sorted(Partition(parts) for parts in build(n, bound)))


def is_k_reducible(lam: Partition, k: int) -> bool:
    """Some i in [0, k) has more than i parts equal to k - i"""
    check_k_bounded(lam, k)
    return any(lam.count(k - i) > i for i in range(k))


def is_k_irreducible(lam: Partition, k: int) -> bool:
    return not is_k_reducible(lam, k)


def k_rectangle(k: int, ell: int) -> Partition:
    if not 1 <= ell <= k:
        raise InvalidInput(f"rectangle width must lie in [1, {k}], got {ell}")
    return Partition([ell] * (k - ell + 1))


@lru_cache(maxsize=None)
def k_irreducible_partitions(k: int) -> Tuple[Partition, ...]:
    """The k! k-irreducible partitions, ordered by degree then lex"""
    if k < 1:
        raise InvalidInput(f"k must be positive, got {k}")
    found = []
    part_values = list(range(k - 1, 0, -1))
    for multiplicities in product(*(range(k - p + 1) for p in part_values)):
        parts = [p for p, count in zip(part_values, multiplicities) for _ in range(count)]
        found.append(Partition(parts))
    return tuple(sorted(found, key=lambda lam: (lam.degree, lam)))


def enumerate_partitions(n: Optional[int], k: Optional[int], kind: str = ALL_K_BOUNDED) -> List[Partition]:
    if kind == ALL_K_BOUNDED:
        if n is None or n < 0:
            raise InvalidInput("enumeration of k-bounded partitions needs a degree n >= 0")
        return list(partitions_of(n, k))
    if kind == K_IRREDUCIBLE:
        if k is None:
            raise InvalidInput("k-irreducible enumeration needs k")
        found = k_irreducible_partitions(k)
        return [lam for lam in found if n is None or lam.degree == n]
    raise InvalidInput(f"unknown enumeration filter {kind!r}")


def irreducible_core(lam: Partition, k: int) -> Tuple[Partition, List[Partition]]:
    """Remove k-rectangles until the remainder is k-irreducible"""
    check_k_bounded(lam, k)
    counts = {p: lam.count(p) for p in set(lam)}
    rectangles: List[Partition] = []
    for i in range(k):
        width, height = k - i, i + 1
        while counts.get(width, 0) > i:
            counts[width] -= height
            rectangles.append(k_rectangle(k, width))
    core = Partition(sorted((p for p, c in counts.items() for _ in range(c)), reverse=True))
    return core, rectangles
