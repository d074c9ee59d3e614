"""Plancherel weights on m-tuples of diagrams, exact LIS laws, and Monte Carlo.

Exact quantities are kept as :class:`fractions.Fraction`. The Monte Carlo
path samples colored permutations directly and runs patience sorting per
color; it never forms tableaux.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping

import numpy as np

from .partitions import dim_1, partitions_of
from .permutations import (
    GuardError,
    colored_length,
    enumerate_colored,
    enumerate_signed,
    l_even,
    l_odd,
    lis_colored,
)
from .quotient import PartitionTuple, core_and_quotient, dim_m_formula, multinomial

__all__ = [
    "EXACT_GUARD",
    "CHUNK_SIZE",
    "ExactDistribution",
    "EmpiricalDistribution",
    "plancherel_weight",
    "size_split_probability",
    "split_sizes",
    "exact_L_distribution",
    "enumerated_L_distribution",
    "signed_distribution",
    "scale_L",
    "scale_component",
    "draw_color_lis",
    "colored_L_from_lengths",
    "sample_scaled_L",
    "joint_component_samples",
    "parallel_color_lis",
    "ks_distance",
]

EXACT_GUARD = 40
CHUNK_SIZE = 500


@dataclass(frozen=True)
class ExactDistribution:
    """Exact probability mass function on integers."""

    pmf: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        pmf = {int(k): Fraction(v) for k, v in sorted(self.pmf.items()) if v != 0}
        if any(v < 0 for v in pmf.values()):
            raise ValueError("negative probability")
        if sum(pmf.values()) != 1:
            raise ValueError(f"masses sum to {sum(pmf.values())}, not 1")
        object.__setattr__(self, "pmf", pmf)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> ExactDistribution:
        total = sum(counts.values())
        return cls({k: Fraction(c, total) for k, c in counts.items()})

    @property
    def support(self) -> list[int]:
        return list(self.pmf)

    def cdf(self, k: float) -> Fraction:
        return sum((p for v, p in self.pmf.items() if v <= k), Fraction(0))

    def cdf_table(self, upto: int | None = None) -> list[tuple[int, Fraction]]:
        """(k, P{L <= k}) for k = 1..upto (default: the largest support value)."""
        hi = max(self.pmf) if upto is None else upto
        out, acc = [], Fraction(0)
        for k in range(1, hi + 1):
            acc += self.pmf.get(k, Fraction(0))
            out.append((k, acc))
        return out

    def mean(self) -> Fraction:
        return sum((k * p for k, p in self.pmf.items()), Fraction(0))


@dataclass(frozen=True)
class EmpiricalDistribution:
    samples: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.sort(np.asarray(self.samples, dtype=float).ravel())
        object.__setattr__(self, "samples", arr)

    @property
    def count(self) -> int:
        return int(self.samples.size)

    def cdf(self, x):
        """Right-continuous step function."""
        return np.searchsorted(self.samples, np.asarray(x, dtype=float), side="right") / self.count


def plancherel_weight(q: PartitionTuple, m: int, n: int) -> Fraction:
    if q.m != m or q.total_size != n:
        raise ValueError(f"need an {m}-tuple of total size {n}")
    num = multinomial(q.sizes) ** 2
    for comp in q:
        num *= dim_1(comp) ** 2
    return Fraction(num, m**n * factorial(n))


def size_split_probability(sizes) -> Fraction:
    """Multinomial(n; 1/m, …, 1/m) mass of the size vector."""
    m, n = len(sizes), sum(sizes)
    return Fraction(multinomial(sizes), m**n)


def split_sizes(n: int, m: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Component sizes under the Plancherel law: n iid uniform color draws, counted."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    return tuple(np.bincount(rng.integers(0, m, size=n), minlength=m).tolist())


def exact_L_distribution(n: int, m: int) -> ExactDistribution:
    """Law of L^{col(m)}_n from the weights dim_m(λ)² / (m^n n!) keyed by width."""
    if m * n > EXACT_GUARD:
        raise GuardError(f"m*n = {m * n} exceeds the exact-enumeration guard {EXACT_GUARD}")
    acc: Counter[int] = Counter()
    for la in partitions_of(m * n):
        core, q = core_and_quotient(la, m)
        if core.rows:
            continue
        acc[la.width] += dim_m_formula(q) ** 2
    total = m**n * factorial(n)
    if sum(acc.values()) != total:
        raise ArithmeticError("squared m-dimensions do not sum to m^n n!")
    return ExactDistribution({k: Fraction(v, total) for k, v in acc.items()})


def enumerated_L_distribution(n: int, m: int) -> ExactDistribution:
    """Law of L^{col(m)}_n by running over all of S_n^(m)."""
    return ExactDistribution.from_counts(Counter(lis_colored(pi) for pi in enumerate_colored(n, m)))


def signed_distribution(n: int, odd: bool = False) -> ExactDistribution:
    stat = l_odd if odd else l_even
    return ExactDistribution.from_counts(Counter(stat(s) for s in enumerate_signed(n)))


def scale_L(L, n: int, m: int, scaling: str = "normalized"):
    """Center and scale colored LIS values.

    ``"normalized"`` divides by m^{2/3}(mn)^{1/6} (limit F^m(x));
    ``"raw"`` divides by (mn)^{1/6} (limit F^m(m^{-2/3}x)).
    """
    L = np.asarray(L, dtype=float)
    centered = L - 2.0 * np.sqrt(m * n)
    denom = (m * n) ** (1.0 / 6.0)
    if scaling == "normalized":
        denom *= m ** (2.0 / 3.0)
    elif scaling != "raw":
        raise ValueError(f"unknown scaling {scaling!r}")
    return centered / denom


def scale_component(widths, n: int, m: int):
    """(l_i − 2√(n/m)) / (n/m)^{1/6}"""
    r = n / m
    return (np.asarray(widths, dtype=float) - 2.0 * np.sqrt(r)) / r ** (1.0 / 6.0)


def _patience(seq: Iterable[int]) -> int:
    tops: list[int] = []
    for v in seq:
        i = bisect_left(tops, v)
        if i == len(tops):
            tops.append(v)
        else:
            tops[i] = v
    return len(tops)


def draw_color_lis(n: int, m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Per-color LIS lengths of ``count`` uniform colored permutations, shape (count, m)."""
    if n < 1 or m < 1 or count < 0:
        raise ValueError("need n >= 1, m >= 1, count >= 0")
    out = np.empty((count, m), dtype=np.int64)
    for s in range(count):
        sigma = rng.permutation(n)
        colors = rng.integers(0, m, size=n)
        for p in range(m):
            out[s, p] = _patience(sigma[colors == p].tolist())
    return out


def colored_L_from_lengths(ks: np.ndarray, m: int) -> np.ndarray:
    """max_p m(k_p − 1) + p over colors present."""
    ks = np.asarray(ks)
    p = np.arange(1, m + 1)
    vals = np.where(ks > 0, colored_length(ks, p, m), 0)
    return vals.max(axis=-1)


def sample_scaled_L(
    n: int, m: int, count: int, rng: np.random.Generator, *, scaling: str = "normalized"
) -> EmpiricalDistribution:
    L = colored_L_from_lengths(draw_color_lis(n, m, count, rng), m)
    return EmpiricalDistribution(scale_L(L, n, m, scaling))


def joint_component_samples(n: int, m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Scaled per-color widths, shape (count, m)."""
    return scale_component(draw_color_lis(n, m, count, rng), n, m)


def _chunk_worker(args) -> np.ndarray:
    n, m, count, seed_seq = args
    return draw_color_lis(n, m, count, np.random.default_rng(seed_seq))


def parallel_color_lis(n: int, m: int, count: int, seed: int, threads: int = 1) -> np.ndarray:
    """Map-reduce version of :func:`draw_color_lis`.

    Samples are drawn in fixed-size chunks, each from its own child of
    ``SeedSequence(seed)``, so the result depends on ``seed`` only, not on
    how many workers run the chunks.
    """
    sizes = [CHUNK_SIZE] * (count // CHUNK_SIZE)
    if count % CHUNK_SIZE:
        sizes.append(count % CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(n, m, c, ss) for c, ss in zip(sizes, children)]
    if threads <= 1 or len(jobs) <= 1:
        parts = [_chunk_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_chunk_worker, jobs))
    return np.concatenate(parts) if parts else np.empty((0, m), dtype=np.int64)


def ks_distance(e: EmpiricalDistribution, cdf: Callable) -> float:
    """One-sample Kolmogorov–Smirnov statistic sup |F_N − cdf|."""
    x = e.samples
    N = x.size
    F = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, N + 1)
    return float(max(np.max(i / N - F), np.max(F - (i - 1) / N)))
