"""The GUE Tracy–Widom distribution F(x) and the composite law F^m(m^{-2/3} x).

Two independent routes are provided:

* the Painlevé II route, integrating the Hastings–McLeod solution
  ``q'' = x q + 2 q^3`` backward from ``x = 8`` with Airy initial data and
  carrying ``I(x) = ∫_x^∞ q²`` and ``J(x) = ∫_x^∞ (s − x) q(s)² ds`` along,
  so that ``F(x) = exp(−J(x))`` and ``F'(x) = F(x) I(x)``;
* the Fredholm determinant ``det(I − K_Airy)`` on ``L²(x, ∞)``, discretized by
  Nyström's method with Gauss–Legendre nodes.

The Painlevé route uses the hand-rolled :func:`airy`; the determinant uses
``scipy.special.airy``, so the two share no Airy code.
"""

from __future__ import annotations

import csv
import math
import os
import warnings
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import airy as _scipy_airy

__all__ = [
    "AIRY_RANGE",
    "TW_RANGE",
    "PainleveError",
    "FredholmError",
    "airy",
    "airy_prime",
    "hastings_mcleod",
    "tw_cdf",
    "tw_density",
    "fredholm_airy_oracle",
    "limit_cdf",
    "tw_mean_painleve",
    "tw_mean_fredholm",
    "TracyWidomTable",
    "build_table",
    "cached_table",
]

AIRY_RANGE = (-15.0, 20.0)
TW_RANGE = (-10.0, 8.0)
X_START = 8.0
X_END = -12.0  # integrate a little past the left end of TW_RANGE
# beyond this the asymptotic series is good to ~1e-18 relative
SERIES_MAX = 10.0

_AI0 = Decimal("0.35502805388781723926006318600418317639797917419918")
_MINUS_AIP0 = Decimal("0.25881940379280679840518356018920396347909113835493")


class PainleveError(RuntimeError):
    pass


class FredholmError(RuntimeError):
    pass


def _airy_series(x: float) -> tuple[float, float]:
    # Terms reach ~1e17 at x = -15 before cancelling, hence 50-digit decimals.
    with localcontext() as ctx:
        ctx.prec = 50
        X = Decimal(repr(x))
        x3 = X * X * X
        tiny = Decimal("1e-45")
        f = t = Decimal(1)
        g = u = X
        fp, a = Decimal(0), X * X / 2
        gp = b = Decimal(1)
        k = 0
        while True:
            fp += a
            k3 = 3 * k
            t = t * x3 / ((k3 + 2) * (k3 + 3))
            u = u * x3 / ((k3 + 3) * (k3 + 4))
            b = b * x3 / ((k3 + 1) * (k3 + 3))
            a = a * x3 / ((k3 + 3) * (k3 + 5))
            f += t
            g += u
            gp += b
            k += 1
            if k > 3 and max(abs(t), abs(u), abs(a), abs(b)) < tiny:
                break
        ai = _AI0 * f - _MINUS_AIP0 * g
        aip = _AI0 * fp - _MINUS_AIP0 * gp
        return float(ai), float(aip)


def _airy_asymptotic(x: float) -> tuple[float, float]:
    zeta = 2.0 / 3.0 * x**1.5
    su, sv = 1.0, 1.0
    u = 1.0
    last = math.inf
    for k in range(1, 60):
        u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        v = -(6 * k + 1) / (6 * k - 1) * u
        term = u / zeta**k
        if abs(term) > last:
            break
        last = abs(term)
        sign = -1.0 if k % 2 else 1.0
        su += sign * term
        sv += sign * v / zeta**k
        if last < 1e-17:
            break
    pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    return pref * su / x**0.25, -pref * x**0.25 * sv


def _airy_pair(x: float) -> tuple[float, float]:
    lo, hi = AIRY_RANGE
    if not lo <= x <= hi:
        raise ValueError(f"airy supported on [{lo}, {hi}], got {x}")
    if x <= SERIES_MAX:
        return _airy_series(x)
    return _airy_asymptotic(x)


def airy(x: float) -> float:
    """Ai(x) on [-15, 20], absolute error below 1e-10.

    Maclaurin series in 50-digit decimal arithmetic up to x = 10, the
    asymptotic expansion beyond.
    """
    return _airy_pair(float(x))[0]


def airy_prime(x: float) -> float:
    return _airy_pair(float(x))[1]


def _rhs(x, y):
    q, qp, i_q2, _ = y
    return [qp, x * q + 2.0 * q**3, -q * q, -i_q2]


@lru_cache(maxsize=1)
def _painleve_solution():
    ai, aip = _airy_pair(X_START)
    x0 = X_START
    # closed forms of ∫_x^∞ Ai² and ∫_x^∞ (s−x) Ai(s)² ds
    i0 = aip * aip - x0 * ai * ai
    j0 = (2.0 * x0 * x0 * ai * ai - 2.0 * x0 * aip * aip - ai * aip) / 3.0
    sol = solve_ivp(
        _rhs,
        (X_START, X_END),
        [ai, aip, i0, j0],
        method="DOP853",
        rtol=1e-13,
        atol=1e-22,
        dense_output=True,
    )
    if sol.status != 0:
        raise PainleveError(f"Hastings–McLeod integration failed: {sol.message}")
    return sol.sol


def hastings_mcleod(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.size and (grid.min() < TW_RANGE[0] or grid.max() > TW_RANGE[1]):
        raise ValueError(f"grid must lie in {TW_RANGE}")
    return _painleve_solution()(grid)[0]


def _clamp(x, warn: bool):
    arr = np.asarray(x, dtype=float)
    lo, hi = TW_RANGE
    if warn and np.any((arr < lo) | (arr > hi)):
        warnings.warn(f"tw_cdf argument clamped to {TW_RANGE}", RuntimeWarning, stacklevel=3)
    return np.clip(arr, lo, hi)


def tw_cdf(x, *, warn: bool = True):
    """F(x) = exp(−∫_x^∞ (s − x) q(s)² ds). Arguments outside [-10, 8] are clamped."""
    xs = _clamp(x, warn)
    out = np.exp(-_painleve_solution()(xs.ravel())[3]).reshape(xs.shape)
    return float(out) if out.ndim == 0 else out


def tw_density(x, *, warn: bool = True):
    xs = _clamp(x, warn)
    y = _painleve_solution()(xs.ravel())
    out = (np.exp(-y[3]) * y[2]).reshape(xs.shape)
    return float(out) if out.ndim == 0 else out


def limit_cdf(x, m: int):
    """F(m^{-2/3} x)^m, the limit law of (L − 2√(mn)) / (mn)^{1/6}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    base = tw_cdf(np.asarray(x, dtype=float) * m ** (-2.0 / 3.0), warn=False)
    return base**m


def _fredholm_det(x: float, order: int) -> float:
    z, w = np.polynomial.legendre.leggauss(order)
    z = 0.5 * (z + 1.0)
    w = 0.5 * w
    s = x + 10.0 * np.tan(0.5 * np.pi * z)
    w = w * 5.0 * np.pi / np.cos(0.5 * np.pi * z) ** 2
    ai, aip, _, _ = _scipy_airy(s)
    ds = s[:, None] - s[None, :]
    np.fill_diagonal(ds, 1.0)
    kernel = (ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]) / ds
    np.fill_diagonal(kernel, aip * aip - s * ai * ai)
    sw = np.sqrt(w)
    return float(np.linalg.det(np.eye(order) - sw[:, None] * kernel * sw[None, :]))


def fredholm_airy_oracle(x: float, *, start: int = 32, tol: float = 1e-8, max_order: int = 1024) -> float:
    """det(I − K_Airy) on (x, ∞), doubling the quadrature order until it settles."""
    lo, hi = TW_RANGE
    if not lo <= x <= hi:
        raise ValueError(f"oracle supported on {TW_RANGE}, got {x}")
    order = start
    prev = _fredholm_det(x, order)
    while order < max_order:
        order *= 2
        cur = _fredholm_det(x, order)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise FredholmError(f"no convergence at x={x} up to order {max_order}")


def _gauss_legendre(a: float, b: float, order: int):
    z, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (b - a) * z + 0.5 * (b + a), 0.5 * (b - a) * w


def tw_mean_painleve(order: int = 200) -> float:
    x, w = _gauss_legendre(*TW_RANGE, order)
    return float(np.sum(w * x * tw_density(x)))


def tw_mean_fredholm(order: int = 120) -> float:
    """Mean via ∫ x dF = b F(b) − a F(a) − ∫_a^b F."""
    a, b = TW_RANGE
    x, w = _gauss_legendre(a, b, order)
    F = np.array([fredholm_airy_oracle(float(v)) for v in x])
    return b * fredholm_airy_oracle(b) - a * fredholm_airy_oracle(a) - float(np.sum(w * F))


TABLE_VERSION = 1


@dataclass(frozen=True)
class TracyWidomTable:
    grid: np.ndarray
    q: np.ndarray
    F: np.ndarray
    tolerance: float

    def limit(self, m: int) -> np.ndarray:
        return limit_cdf(self.grid, m)

    def write_csv(self, path, m: int = 1) -> None:
        path = Path(path)
        with path.open("w", newline="") as fh:
            fh.write(f"# tracy-widom table v{TABLE_VERSION}\n")
            fh.write(f"# tolerance={self.tolerance:.3e}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "q", "F", "F_limit_m"])
            for row in zip(self.grid, self.q, self.F, self.limit(m)):
                writer.writerow([f"{v:.15g}" for v in row])

    @classmethod
    def read_csv(cls, path) -> TracyWidomTable:
        tol = math.nan
        rows = []
        with Path(path).open() as fh:
            for line in fh:
                if line.startswith("# tolerance="):
                    tol = float(line.split("=", 1)[1])
                elif line.startswith("#") or line.startswith("x,"):
                    continue
                elif line.strip():
                    rows.append([float(v) for v in line.split(",")])
        arr = np.array(rows)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2], tol)


def build_table(xmin: float, xmax: float, steps: int, *, certify: bool = True) -> TracyWidomTable:
    """Tabulate q and F; ``tolerance`` is the worst Painlevé/determinant gap on the grid."""
    grid = np.linspace(xmin, xmax, steps)
    q = hastings_mcleod(grid)
    F = tw_cdf(grid)
    tol = math.nan
    if certify:
        oracle = np.array([fredholm_airy_oracle(float(x)) for x in grid])
        tol = float(np.max(np.abs(oracle - F)))
    return TracyWidomTable(grid, q, F, tol)


def cached_table(xmin: float, xmax: float, steps: int, cache_dir=None) -> TracyWidomTable:
    """Load a table from ``RIMHOOK_CACHE_DIR`` or build and store it there."""
    cache_dir = cache_dir or os.environ.get("RIMHOOK_CACHE_DIR")
    if not cache_dir:
        return build_table(xmin, xmax, steps)
    path = Path(cache_dir) / f"tw_v{TABLE_VERSION}_{xmin:g}_{xmax:g}_{steps}.csv"
    if path.exists():
        return TracyWidomTable.read_csv(path)
    table = build_table(xmin, xmax, steps)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.write_csv(path)
    return table
