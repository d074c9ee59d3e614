"""m-cores, m-quotients and rim hooks.

The core/quotient map goes through an m-runner abacus. A partition with at
most ``t`` parts, ``t`` a multiple of m, is encoded by its beta-numbers
``rows[i] + t - 1 - i``; bead position ``b`` sits on runner ``b % m`` at
level ``b // m``. Component ``p`` of the quotient (1-based) is read off
runner ``p - 1``. With this labeling the width of a decomposable diagram is

    w(λ) = max_p  m·(w(λ_p) − 1) + p     (over nonempty components),

which is exactly the colored longest-increasing-subsequence length, so the
shape map on colored permutations preserves widths.

Rim-hook removal is computed directly on the diagram (no abacus) so that
``dim_m_removal`` is an independent check on ``dim_m_formula``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .partitions import EMPTY, Partition, dim_1, partitions_of

__all__ = [
    "PartitionTuple",
    "Abacus",
    "core_and_quotient",
    "is_decomposable",
    "combine",
    "removable_rim_hooks",
    "dim_m_formula",
    "dim_m_removal",
    "width_defect",
    "decomposable_partitions",
    "tuples_of",
    "multinomial",
]


@dataclass(frozen=True)
class PartitionTuple:
    components: tuple[Partition, ...]

    def __post_init__(self) -> None:
        comps = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.components)
        if not comps:
            raise ValueError("a partition tuple needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def total_size(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.components)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Partition:
        return self.components[i]

    def __le__(self, other: PartitionTuple) -> bool:
        return self.m == other.m and all(b.contains(a) for a, b in zip(self, other))

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.components)

    @classmethod
    def empty(cls, m: int) -> PartitionTuple:
        return cls((EMPTY,) * m)

    @classmethod
    def parse(cls, text: str) -> PartitionTuple:
        return cls(tuple(Partition.parse(tok) for tok in text.split()))


def _pad_count(n_parts: int, m: int) -> int:
    return -(-n_parts // m) * m


@dataclass(frozen=True)
class Abacus:
    """Bead levels per runner for a partition padded to ``t`` parts."""

    m: int
    t: int
    runners: tuple[tuple[int, ...], ...]  # ascending bead levels on each runner

    @classmethod
    def of(cls, la: Partition, m: int, t: int | None = None) -> Abacus:
        if t is None:
            t = _pad_count(len(la), m)
        if t % m or t < len(la):
            raise ValueError(f"pad count {t} must be a multiple of {m} and >= {len(la)}")
        rows = la.rows + (0,) * (t - len(la))
        beta = [rows[i] + t - 1 - i for i in range(t)]
        runners: list[list[int]] = [[] for _ in range(m)]
        for b in beta:
            runners[b % m].append(b // m)
        return cls(m, t, tuple(tuple(sorted(r)) for r in runners))

    def beta_numbers(self) -> list[int]:
        return sorted((lvl * self.m + r for r, levels in enumerate(self.runners) for lvl in levels), reverse=True)

    def partition(self) -> Partition:
        beta = self.beta_numbers()
        t = len(beta)
        return Partition.from_rows([b - (t - 1 - i) for i, b in enumerate(beta)])

    def is_flush(self) -> bool:
        """True when no bead can slide down, i.e. the partition is an m-core."""
        return all(levels == tuple(range(len(levels))) for levels in self.runners)

    def has_empty_core(self) -> bool:
        return len({len(levels) for levels in self.runners}) == 1

    def core(self) -> Partition:
        flush = Abacus(self.m, self.t, tuple(tuple(range(len(r))) for r in self.runners))
        return flush.partition()

    def quotient(self) -> PartitionTuple:
        comps = []
        for levels in self.runners:
            k = len(levels)
            desc = sorted(levels, reverse=True)
            comps.append(Partition.from_rows([lvl - (k - 1 - j) for j, lvl in enumerate(desc)]))
        return PartitionTuple(tuple(comps))


def core_and_quotient(la: Partition, m: int) -> tuple[Partition, PartitionTuple]:
    """Split ``la`` into its m-core and m-quotient.

    >>> core, q = core_and_quotient(Partition((3, 1)), 2)
    >>> str(core), str(q)
    ('-', '2 -')
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    ab = Abacus.of(la, m)
    return ab.core(), ab.quotient()


def is_decomposable(la: Partition, m: int) -> bool:
    if m < 1:
        raise ValueError("m must be >= 1")
    if la.size % m:
        return False
    return Abacus.of(la, m).has_empty_core()


def combine(q: PartitionTuple | Sequence[Partition], m: int | None = None) -> Partition:
    """Inverse of the quotient map on diagrams with empty m-core."""
    if not isinstance(q, PartitionTuple):
        q = PartitionTuple(tuple(q))
    if m is None:
        m = q.m
    if q.m != m:
        raise ValueError(f"expected {m} components, got {q.m}")
    s = max(len(c) for c in q)
    runners = []
    for comp in q:
        rows = comp.rows + (0,) * (s - len(comp))
        runners.append(tuple(sorted(rows[j] + s - 1 - j for j in range(s))))
    return Abacus(m, m * s, tuple(runners)).partition()


def removable_rim_hooks(la: Partition, m: int) -> list[Partition]:
    """All μ with λ−μ a rim hook of m cells.

    A rim hook occupying rows ``i..k`` leaves ``μ_r = λ_{r+1} − 1`` for
    ``i <= r < k`` and ``μ_k = λ_i + k − i − m``; the bottom row must keep at
    least one strip cell and stay above ``λ_{k+1}``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    rows = la.rows
    n = len(rows)

    def row(r: int) -> int:
        return rows[r] if r < n else 0

    out = []
    for i in range(n):
        for k in range(i, n):
            if k > i and k - i + 1 > m:
                break
            bottom = rows[i] + k - i - m
            if not (row(k + 1) <= bottom <= rows[k] - 1):
                continue
            new = list(rows[:i]) + [rows[r + 1] - 1 for r in range(i, k)] + [bottom] + list(rows[k + 1:])
            out.append(Partition.from_rows(new))
    return out


def multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def dim_m_formula(q: PartitionTuple) -> int:
    """Multinomial of the component sizes times the product of their dim_1."""
    out = multinomial(q.sizes)
    for comp in q:
        out *= dim_1(comp)
    return out


@lru_cache(maxsize=1 << 18)
def _dim_m_removal(rows: tuple[int, ...], m: int) -> int:
    la = Partition(rows)
    if la.size == 0:
        return 1
    if la.size % m:
        return 0
    return sum(_dim_m_removal(mu.rows, m) for mu in removable_rim_hooks(la, m))


def dim_m_removal(la: Partition, m: int) -> int:
    """Count m-rim-hook tableaux of shape ``la`` by peeling rim hooks."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return _dim_m_removal(la.rows, m)


def width_defect(la: Partition, m: int) -> int:
    """``m·max_k w(λ_k) − w(λ)`` for decomposable ``la``; always in ``0..m-1``."""
    core, q = core_and_quotient(la, m)
    if core.rows:
        raise ValueError(f"{la} is not {m}-decomposable (core {core})")
    return m * max(c.width for c in q) - la.width


def decomposable_partitions(size: int, m: int) -> Iterator[Partition]:
    for la in partitions_of(size):
        if is_decomposable(la, m):
            yield la


def tuples_of(n: int, m: int) -> Iterator[PartitionTuple]:
    """All m-tuples of partitions with total size ``n``."""

    def compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, slots - 1):
                yield (first,) + rest

    def expand(sizes: tuple[int, ...]) -> Iterator[tuple[Partition, ...]]:
        if not sizes:
            yield ()
            return
        for head in partitions_of(sizes[0]):
            for tail in expand(sizes[1:]):
                yield (head,) + tail

    for sizes in compositions(n, m):
        for comps in expand(sizes):
            yield PartitionTuple(comps)
