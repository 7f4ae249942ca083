from typing import Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from app.utils.errors import InvalidInput


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; the universal index"""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        values = tuple(parts)
        for i, part in enumerate(values):
            if not isinstance(part, int) or isinstance(part, bool) or part < 1:
                raise InvalidInput(f"partition parts must be positive integers, got {values!r}")
            if i and values[i - 1] < part:
                raise InvalidInput(f"partition parts must be weakly decreasing, got {values!r}")
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse comma-separated parts, e.g. ``3,2,1``; the empty string is ()"""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(piece) for piece in text.split(","))
        except ValueError:
            raise InvalidInput(f"malformed partition {text!r}")

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """i-th part (0-based), zero beyond the length"""
        return self[i] if i < len(self) else 0

    def to_text(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self):
        return f"Partition({self.to_text()!r})"


class PartitionSequence(tuple):
    """Ordered sequence of partitions indexing a generalized Schur product"""

    __slots__ = ()

    def __new__(cls, elements: Iterable[Iterable[int]] = ()):
        return super().__new__(cls, tuple(e if isinstance(e, Partition) else Partition(e) for e in elements))

    @classmethod
    def parse(cls, text: str) -> "PartitionSequence":
        """Semicolon-separated partitions, e.g. ``2,1;1``"""
        text = text.strip()
        if not text:
            return cls()
        return cls(Partition.parse(piece) for piece in text.split(";"))

    def concatenation(self) -> Tuple[int, ...]:
        return tuple(p for element in self for p in element)

    @property
    def degree(self) -> int:
        return sum(element.degree for element in self)

    def is_dominant(self) -> bool:
        parts = self.concatenation()
        return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))

    def canonical(self) -> "PartitionSequence":
        """Drop empty elements; they do not change the product"""
        return PartitionSequence(e for e in self if e)

    def to_text(self) -> str:
        return ";".join(e.to_text() for e in self)

    def __repr__(self):
        return f"PartitionSequence({self.to_text()!r})"


class SkewShape(BaseModel):
    """Skew diagram with rows indexed bottom-up, each row a half-open column range"""

    model_config = ConfigDict(frozen=True)

    rows: Tuple[Tuple[int, int], ...] = ()

    @field_validator("rows")
    @classmethod
    def validate_rows(cls, rows):
        starts = [start for start, _ in rows]
        ends = [end for _, end in rows]
        for start, end in rows:
            if start < 0 or end <= start:
                raise ValueError(f"invalid row range {(start, end)}")
        if any(starts[i] < starts[i + 1] for i in range(len(rows) - 1)):
            raise ValueError("row starts must weakly decrease upwards")
        if any(ends[i] < ends[i + 1] for i in range(len(rows) - 1)):
            raise ValueError("row ends must weakly decrease upwards")
        return rows

    @classmethod
    def from_partitions(cls, outer: Partition, inner: Partition = Partition()) -> "SkewShape":
        if len(inner) > len(outer) or any(inner.part(i) > outer[i] for i in range(len(outer))):
            raise InvalidInput(f"{inner.to_text()!r} is not contained in {outer.to_text()!r}")
        if any(inner.part(i) == outer[i] for i in range(len(outer))):
            raise InvalidInput("skew shapes with empty rows are not supported")
        return cls(rows=tuple((inner.part(i), outer[i]) for i in range(len(outer))))

    @property
    def inner(self) -> Partition:
        return Partition(start for start, _ in self.rows if start)

    @property
    def row_lengths(self) -> List[int]:
        return [end - start for start, end in self.rows]

    @property
    def size(self) -> int:
        return sum(self.row_lengths)

    def hook(self, row: int, column: int) -> int:
        """Cells strictly east plus cells strictly north plus one"""
        east = self.rows[row][1] - column - 1
        north = 0
        for start, end in self.rows[row + 1:]:
            if not start <= column < end:
                break
            north += 1
        return east + north + 1

    def max_hook(self) -> int:
        return max(
            (self.hook(r, c) for r, (start, end) in enumerate(self.rows) for c in range(start, end)),
            default=0,
        )
