"""Colored and signed permutations and their longest increasing subsequences.

Values are 1-based throughout: ``sigma`` lists the images of ``1..n`` and
``colors`` the color in ``1..m`` attached to each point.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence

import numpy as np

from .partitions import Partition
from .quotient import PartitionTuple, combine

__all__ = [
    "ENUMERATION_GUARD",
    "GuardError",
    "ColoredPermutation",
    "SignedPermutation",
    "lis_plain",
    "color_lis_lengths",
    "lis_colored",
    "colored_length",
    "sample_colored",
    "sample_signed",
    "l_even",
    "l_odd",
    "rsk_shape",
    "shape_of_colored",
    "enumerate_colored",
    "enumerate_signed",
]

ENUMERATION_GUARD = 10**7


class GuardError(RuntimeError):
    """Raised when an exhaustive computation would exceed its size guard."""


@dataclass(frozen=True)
class ColoredPermutation:
    sigma: tuple[int, ...]
    colors: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        sigma = tuple(int(v) for v in self.sigma)
        colors = tuple(int(c) for c in self.colors)
        n = len(sigma)
        if sorted(sigma) != list(range(1, n + 1)):
            raise ValueError(f"sigma is not a permutation of 1..{n}: {sigma}")
        if len(colors) != n:
            raise ValueError("colors must have one entry per point")
        if self.m < 1 or any(not 1 <= c <= self.m for c in colors):
            raise ValueError(f"colors must lie in 1..{self.m}: {colors}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "colors", colors)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def subword(self, color: int) -> list[int]:
        return [v for v, c in zip(self.sigma, self.colors) if c == color]


@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(int(v) for v in self.perm)
        signs = tuple(int(s) for s in self.signs)
        n = len(perm)
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"perm is not a permutation of 1..{n}: {perm}")
        if len(signs) != n or any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be n values in {+1, -1}")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __call__(self, x: int) -> int:
        if x == 0:
            return 0
        v = self.signs[abs(x) - 1] * self.perm[abs(x) - 1]
        return v if x > 0 else -v

    def even_sequence(self) -> list[int]:
        """(σ(−n), …, σ(−1), σ(1), …, σ(n))"""
        pos = [s * v for s, v in zip(self.signs, self.perm)]
        return [-v for v in reversed(pos)] + pos

    def odd_sequence(self) -> list[int]:
        seq = self.even_sequence()
        return seq[: self.n] + [0] + seq[self.n:]


def lis_plain(seq: Iterable) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    tops: list = []
    for v in seq:
        i = bisect_left(tops, v)
        if i == len(tops):
            tops.append(v)
        else:
            tops[i] = v
    return len(tops)


def colored_length(k: int, p: int, m: int) -> int:
    """Length m(k−1)+p of an increasing run of k points of color p."""
    return m * (k - 1) + p


def color_lis_lengths(pi: ColoredPermutation) -> list[int]:
    """Per-color plain LIS lengths k_1..k_m (0 for an absent color)."""
    return [lis_plain(pi.subword(p)) for p in range(1, pi.m + 1)]


def lis_colored(pi: ColoredPermutation) -> int:
    ks = color_lis_lengths(pi)
    return max(colored_length(k, p, pi.m) for p, k in enumerate(ks, start=1) if k > 0)


def sample_colored(n: int, m: int, rng: np.random.Generator) -> ColoredPermutation:
    """Uniform element of S_n^(m)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    sigma = rng.permutation(n) + 1
    colors = rng.integers(1, m + 1, size=n)
    return ColoredPermutation(tuple(sigma.tolist()), tuple(colors.tolist()), m)


def sample_signed(n: int, rng: np.random.Generator) -> SignedPermutation:
    perm = rng.permutation(n) + 1
    signs = rng.choice(np.array([-1, 1]), size=n)
    return SignedPermutation(tuple(perm.tolist()), tuple(signs.tolist()))


def l_even(sigma: SignedPermutation) -> int:
    return lis_plain(sigma.even_sequence())


def l_odd(sigma: SignedPermutation) -> int:
    return lis_plain(sigma.odd_sequence())


def rsk_shape(seq: Sequence) -> Partition:
    """Shape of the RSK insertion tableau of ``seq`` (full row insertion)."""
    rows: list[list] = []
    for v in seq:
        for row in rows:
            i = bisect_left(row, v)
            if i == len(row):
                row.append(v)
                break
            row[i], v = v, row[i]
        else:
            rows.append([v])
    return Partition(tuple(len(r) for r in rows))


def shape_of_colored(pi: ColoredPermutation) -> Partition:
    """Diagram with m·n boxes whose m-quotient is the tuple of per-color RSK shapes."""
    q = PartitionTuple(tuple(rsk_shape(pi.subword(p)) for p in range(1, pi.m + 1)))
    return combine(q, pi.m)


def _check_guard(count: int) -> None:
    if count > ENUMERATION_GUARD:
        raise GuardError(f"enumeration of {count} elements exceeds guard {ENUMERATION_GUARD}")


def enumerate_colored(n: int, m: int) -> Iterator[ColoredPermutation]:
    _check_guard(m**n * factorial(n))
    for sigma in itertools.permutations(range(1, n + 1)):
        for colors in itertools.product(range(1, m + 1), repeat=n):
            yield ColoredPermutation(sigma, colors, m)


def enumerate_signed(n: int) -> Iterator[SignedPermutation]:
    _check_guard(2**n * factorial(n))
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)
