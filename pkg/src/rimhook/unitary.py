"""Haar unitaries and Monte Carlo estimates of trace-power moments.

For U Haar on U(k),

    E|Tr(U^m)^n|²        = m^n n! · P{L^{col(m)}_n <= k}
    E|Tr(U²)^n Tr U|²    = 2^n n! · P{L^{odd}_n <= k}
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "MomentEstimate",
    "haar_sample",
    "haar_batch",
    "trace_powers",
    "trace_powers_eig",
    "moment_colored",
    "moment_odd",
    "moment_table",
]

BATCH = 5000
ROUNDOFF = 1e-10


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    standard_error: float
    samples: int

    def z_score(self, target: float) -> float:
        # floor the error at rounding level: at k = 1 the integrand is exactly 1
        se = max(self.standard_error, ROUNDOFF * max(1.0, abs(target)))
        return (self.mean - target) / se

    def scaled(self, factor: float) -> MomentEstimate:
        return MomentEstimate(self.mean * factor, self.standard_error * abs(factor), self.samples)


class _Welford:
    """Streaming mean/variance, merged batch by batch (Chan et al.)."""

    def __init__(self) -> None:
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0

    def update(self, values: np.ndarray) -> None:
        nb = values.size
        if nb == 0:
            return
        mb = float(values.mean())
        m2b = float(((values - mb) ** 2).sum())
        tot = self.n + nb
        delta = mb - self.mean
        self.mean += delta * nb / tot
        self.m2 += m2b + delta * delta * self.n * nb / tot
        self.n = tot

    def estimate(self) -> MomentEstimate:
        if self.n < 2:
            return MomentEstimate(self.mean, math.nan, self.n)
        var = self.m2 / (self.n - 1)
        return MomentEstimate(self.mean, math.sqrt(var / self.n), self.n)


def haar_batch(k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` Haar unitaries of size k, shape (count, k, k).

    Ginibre matrix → Householder QR → multiply column j of Q by the phase of
    R[j, j], which makes the triangular factor positive and the law exactly Haar.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    z = (rng.standard_normal((count, k, k)) + 1j * rng.standard_normal((count, k, k))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def haar_sample(k: int, rng: np.random.Generator) -> np.ndarray:
    return haar_batch(k, 1, rng)[0]


def trace_powers(u: np.ndarray, jmax: int) -> np.ndarray:
    """Tr(U^j) for j = 1..jmax by repeated multiplication; works on stacks."""
    out = []
    power = u
    for j in range(1, jmax + 1):
        if j > 1:
            power = power @ u
        out.append(np.trace(power, axis1=-2, axis2=-1))
    return np.stack(out, axis=-1)


def trace_powers_eig(u: np.ndarray, jmax: int) -> np.ndarray:
    ev = np.linalg.eigvals(u)
    return np.stack([(ev**j).sum(axis=-1) for j in range(1, jmax + 1)], axis=-1)


def moment_table(
    k: int, specs: Iterable[tuple[int, int, bool]], count: int, rng: np.random.Generator
) -> dict[tuple[int, int, bool], MomentEstimate]:
    """Estimate several moments from one stream of Haar samples.

    Each spec is ``(m, n, odd)``: ``odd=False`` gives E|Tr(U^m)^n|²,
    ``odd=True`` gives E|Tr(U²)^n Tr U|² (``m`` is then ignored and taken as 2).
    """
    specs = [(2 if odd else m, n, odd) for m, n, odd in specs]
    if any(m < 1 or n < 1 for m, n, _ in specs):
        raise ValueError("need m >= 1 and n >= 1")
    jmax = max(m for m, _, _ in specs)
    acc = {s: _Welford() for s in specs}
    done = 0
    while done < count:
        b = min(BATCH, count - done)
        tr = trace_powers(haar_batch(k, b, rng), jmax)
        for m, n, odd in acc:
            val = tr[:, m - 1] ** n
            if odd:
                val = val * tr[:, 0]
            acc[(m, n, odd)].update(np.abs(val) ** 2)
        done += b
    return {s: w.estimate() for s, w in acc.items()}


def moment_colored(k: int, m: int, n: int, count: int, rng: np.random.Generator) -> MomentEstimate:
    """Monte Carlo E|Tr(U^m)^n|² over U(k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return moment_table(k, [(m, n, False)], count, rng)[(m, n, False)]


def moment_odd(k: int, n: int, count: int, rng: np.random.Generator) -> MomentEstimate:
    """Monte Carlo E|Tr(U²)^n Tr U|² over U(k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return moment_table(k, [(2, n, True)], count, rng)[(2, n, True)]
