"""Young diagrams: enumeration, conjugation and the Young-lattice dimension.

A partition is stored as a tuple of weakly decreasing positive row lengths.
The empty diagram is ``Partition(())`` and serializes as ``"-"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

__all__ = ["Partition", "EMPTY", "partitions_of", "dim_1", "conjugate"]


@dataclass(frozen=True)
class Partition:
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.rows)
        if any(r < 1 for r in rows):
            raise ValueError(f"rows must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Partition:
        """Build from a row list that may carry trailing zeros."""
        return cls(tuple(r for r in rows if r > 0))

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip()
        if text in ("-", "", "()"):
            return EMPTY
        return cls(tuple(int(tok) for tok in text.strip("()").split(",") if tok.strip()))

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    @property
    def length(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[int]:
        return iter(self.rows)

    def __getitem__(self, i: int) -> int:
        return self.rows[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.rows)) if self.rows else "-"

    def __repr__(self) -> str:
        return f"Partition({self.rows!r})"

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, r in enumerate(self.rows):
            for j in range(r):
                yield i, j

    def contains(self, other: Partition) -> bool:
        """True if ``other`` fits inside this diagram."""
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self.rows, other.rows))

    def corners(self) -> list[Partition]:
        """Diagrams obtained by deleting one removable box (the μ with μ↗λ in Y)."""
        out = []
        rows = self.rows
        for i, r in enumerate(rows):
            if i + 1 == len(rows) or rows[i + 1] < r:
                out.append(Partition.from_rows(rows[:i] + (r - 1,) + rows[i + 1:]))
        return out

    def addable(self) -> list[Partition]:
        """Diagrams obtained by adding one box."""
        out = []
        rows = self.rows + (0,)
        for i, r in enumerate(rows):
            if i == 0 or rows[i - 1] > r:
                out.append(Partition.from_rows(rows[:i] + (r + 1,) + rows[i + 1:]))
        return out


EMPTY = Partition(())


def partitions_of(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in lexicographically descending order.

    >>> [str(p) for p in partitions_of(4)]
    ['4', '3,1', '2,2', '2,1,1', '1,1,1,1']
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield EMPTY
        return

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def conjugate(la: Partition) -> Partition:
    if not la.rows:
        return EMPTY
    return Partition(tuple(sum(1 for r in la.rows if r > j) for j in range(la.width)))


def hook_lengths(la: Partition) -> list[int]:
    cols = conjugate(la).rows
    return [la.rows[i] - j + cols[j] - i - 1 for i, j in la.cells()]


def dim_1(la: Partition) -> int:
    """Number of standard Young tableaux of shape ``la`` (hook-length formula)."""
    prod = 1
    for h in hook_lengths(la):
        prod *= h
    return factorial(la.size) // prod
