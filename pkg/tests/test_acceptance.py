"""Acceptance criteria 1-10, one PASS/FAIL line per criterion on the terminal.

Tolerances are pinned here and nowhere else.
"""

import time
from math import factorial

import numpy as np
import pytest
from conftest import MC_N, desk_scale_lengths

from rimhook.cli import independence_table, main
from rimhook.partitions import partitions_of
from rimhook.permutations import enumerate_colored, enumerate_signed, l_even, l_odd, lis_colored, shape_of_colored
from rimhook.plancherel import (
    EmpiricalDistribution,
    colored_L_from_lengths,
    enumerated_L_distribution,
    exact_L_distribution,
    ks_distance,
    scale_L,
    scale_component,
    signed_distribution,
)
from rimhook.quotient import core_and_quotient, decomposable_partitions, dim_m_formula, dim_m_removal, width_defect
from rimhook.tracywidom import build_table, limit_cdf, tw_cdf, tw_mean_fredholm, tw_mean_painleve
from rimhook.unitary import moment_table

C1_SECONDS = 10.0
C2_SECONDS = 60.0
C6_SECONDS = 300.0
C6_Z = 3.5
C6_SAMPLES = 100_000
C6_SEED = 2024
C7_GRID_TOL = 1e-6
C7_MEAN_TOL = 1e-3
C8_SECONDS = 180.0
C8_KS = 0.08
C8_CROSS_KS = 0.12
C9_TOL = 0.08
C9_POINTS = [-2.5, -1.5, -0.5]


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {number}: {detail}"

    return emit


def test_c01_normalization(report):
    t0 = time.perf_counter()
    bad = []
    for m in (1, 2, 3):
        for n in range(1, 6):
            total = 0
            for la in partitions_of(m * n):
                core, q = core_and_quotient(la, m)
                if not core.rows:
                    total += dim_m_formula(q) ** 2
            if total != m**n * factorial(n):
                bad.append((m, n))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < C1_SECONDS, f"mismatches={bad} time={dt:.2f}s (< {C1_SECONDS}s)")


def test_c02_dimension_oracle(report):
    t0 = time.perf_counter()
    checked = mismatches = 0
    for m in (2, 3, 4):
        for size in range(0, 17, m):
            for la in decomposable_partitions(size, m):
                _, q = core_and_quotient(la, m)
                checked += 1
                mismatches += dim_m_formula(q) != dim_m_removal(la, m)
    dt = time.perf_counter() - t0
    report(2, mismatches == 0 and dt < C2_SECONDS, f"checked={checked} mismatches={mismatches} time={dt:.2f}s")


def test_c03_width_defect(report):
    checked = violations = 0
    for m in (2, 3, 4, 5):
        for size in range(0, 21, m):
            for la in decomposable_partitions(size, m):
                checked += 1
                violations += not 0 <= width_defect(la, m) <= m - 1
    report(3, violations == 0, f"checked={checked} violations={violations}")


def test_c04_shape_width(report):
    checked = mismatches = 0
    for m, nmax in ((2, 5), (3, 4)):
        for n in range(1, nmax + 1):
            for pi in enumerate_colored(n, m):
                checked += 1
                mismatches += shape_of_colored(pi).width != lis_colored(pi)
    report(4, mismatches == 0, f"checked={checked} mismatches={mismatches}")


def test_c05_two_colors_vs_signed(report):
    unequal, off = [], 0
    for n in range(1, 6):
        if not enumerated_L_distribution(n, 2) == exact_L_distribution(n, 2) == signed_distribution(n):
            unequal.append(n)
        off += sum(l_odd(s) - l_even(s) not in (0, 1) for s in enumerate_signed(n))
    report(5, not unequal and off == 0, f"unequal_n={unequal} odd_even_violations={off}")


def test_c06_unitary_moments(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(C6_SEED)
    colored = {(m, n): exact_L_distribution(n, m) for m in (1, 2, 3) for n in (1, 2, 3)}
    odd = {n: signed_distribution(n, odd=True) for n in (1, 2, 3)}
    worst, cells = 0.0, 0
    for k in range(1, 11):
        specs = [(m, n, False) for (m, n) in colored if k <= m * n + 1]
        specs += [(2, n, True) for n in odd if k <= 2 * n + 2]
        if not specs:
            continue
        est = moment_table(k, specs, C6_SAMPLES, rng)
        for (m, n, is_odd), e in est.items():
            norm = 2**n * factorial(n) if is_odd else m**n * factorial(n)
            target = (odd[n] if is_odd else colored[(m, n)]).cdf(k)
            z = abs(e.scaled(1.0 / norm).z_score(float(target)))
            worst = max(worst, z)
            cells += 1
    dt = time.perf_counter() - t0
    ok = worst <= C6_Z and dt < C6_SECONDS
    report(6, ok, f"cells={cells} max|z|={worst:.2f} (<= {C6_Z}) time={dt:.1f}s")


def test_c07_tracy_widom_dual_routes(report):
    table = build_table(-8.0, 6.0, 29)
    gap = abs(tw_mean_painleve() - tw_mean_fredholm())
    ok = table.tolerance <= C7_GRID_TOL and gap <= C7_MEAN_TOL
    report(7, ok, f"grid_gap={table.tolerance:.2e} (<= {C7_GRID_TOL}) mean_gap={gap:.2e} (<= {C7_MEAN_TOL})")


def test_c08_desk_scale_limit_law(report):
    t0 = time.perf_counter()
    ks = {}
    for m in (1, 2, 3):
        L = colored_L_from_lengths(desk_scale_lengths(m), m)
        emp = EmpiricalDistribution(scale_L(L, MC_N, m, "raw"))
        ks[m] = ks_distance(emp, lambda x, m=m: limit_cdf(x, m))
    L2 = colored_L_from_lengths(desk_scale_lengths(2), 2)
    cross = ks_distance(EmpiricalDistribution(scale_L(L2, MC_N, 2, "normalized")), lambda x: tw_cdf(x, warn=False))
    dt = time.perf_counter() - t0
    ok = all(v <= C8_KS for v in ks.values()) and cross >= C8_CROSS_KS and dt < C8_SECONDS
    detail = " ".join(f"KS[m={m}]={v:.4f}" for m, v in ks.items())
    report(8, ok, f"{detail} (<= {C8_KS}) cross={cross:.4f} (>= {C8_CROSS_KS}) time={dt:.1f}s")


def test_c09_component_independence(report):
    z = scale_component(desk_scale_lengths(2), MC_N, 2)
    rows = independence_table(z, C9_POINTS)
    worst = max(r[-1] for r in rows)
    report(9, len(rows) == 9 and worst <= C9_TOL, f"points={len(rows)} max|joint-product|={worst:.4f} (<= {C9_TOL})")


def test_c10_determinism(report, tmp_path):
    argv = ["limit-law", "--n", "2000", "--m", "2", "--samples", "10000", "--seed", "1", "--grid=-4:2:25"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(argv + ["--output", str(a)])
    main(argv + ["--output", str(b)])
    same = a.read_bytes() == b.read_bytes()
    report(10, same, f"byte_identical={same} bytes={a.stat().st_size}")
