import math
import warnings

import mpmath
import numpy as np
import pytest

from rimhook.tracywidom import (
    FredholmError,
    TracyWidomTable,
    airy,
    airy_prime,
    build_table,
    cached_table,
    fredholm_airy_oracle,
    hastings_mcleod,
    limit_cdf,
    tw_cdf,
    tw_density,
    tw_mean_fredholm,
    tw_mean_painleve,
)

GRID29 = np.linspace(-8.0, 6.0, 29)


def test_airy_at_zero():
    assert airy(0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), abs=1e-12)
    assert airy(0.0) == pytest.approx(0.3550280539, abs=1e-10)


def test_airy_against_high_precision_reference():
    mpmath.mp.dps = 40
    for x in np.linspace(-15.0, 20.0, 141):
        assert abs(airy(x) - float(mpmath.airyai(x))) < 1e-10
        assert abs(airy_prime(x) - float(mpmath.airyai(x, 1))) < 1e-10


def test_airy_positive_and_decaying():
    xs = np.linspace(2.0, 20.0, 181)
    vals = [airy(x) for x in xs]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_airy_solves_its_ode():
    h = 3e-3
    for x in np.linspace(-10.0, 10.0, 41):
        f = [airy(x + j * h) for j in (-2, -1, 0, 1, 2)]
        second = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h**2)
        assert abs(second - x * f[2]) < 1e-8


def test_airy_range_refusal():
    with pytest.raises(ValueError, match="supported"):
        airy(25.0)


def test_hastings_mcleod_matches_airy_on_the_right():
    for x in np.linspace(4.0, 8.0, 21):
        ratio = hastings_mcleod([x])[0] / airy(x)
        # q - Ai is O(Ai^3), below integrator precision once x > 6
        assert 1.0 - 1e-11 <= ratio <= 1.0 + 1e-6


def test_hastings_mcleod_left_asymptotic():
    q = hastings_mcleod([-8.0])[0]
    assert q**2 / 4.0 == pytest.approx(1.0, rel=0.02)


def test_hastings_mcleod_agrees_with_determinant():
    # q(x)² = −(log F)''(x); take F from the determinant
    h = 0.02
    for x in (-4.0, -2.0, 0.0, 2.0):
        logs = [math.log(fredholm_airy_oracle(x + d, tol=1e-13)) for d in (-h, 0.0, h)]
        q2 = -(logs[0] - 2 * logs[1] + logs[2]) / h**2
        assert q2 == pytest.approx(hastings_mcleod([x])[0] ** 2, rel=1e-3, abs=1e-7)


def test_painleve_residual():
    h = 1e-3
    xs = np.linspace(-9.0, 7.0, 33)
    q = hastings_mcleod(xs)
    qpp = (hastings_mcleod(xs + h) - 2 * q + hastings_mcleod(xs - h)) / h**2
    assert np.max(np.abs(qpp - xs * q - 2 * q**3)) < 1e-7 * max(1.0, np.max(np.abs(q)) ** 3)


def test_hastings_mcleod_grid_range():
    with pytest.raises(ValueError):
        hastings_mcleod([-11.0])


def test_cdf_tails():
    assert tw_cdf(8.0) >= 1 - 1e-8
    assert tw_cdf(-10.0) <= 1e-6


def test_cdf_clamps_with_warning():
    with pytest.warns(RuntimeWarning):
        assert tw_cdf(12.0) == tw_cdf(8.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        tw_cdf(np.array([-20.0, 20.0]), warn=False)


def test_cdf_monotone_and_density():
    xs = np.linspace(-10.0, 8.0, 2001)
    F = tw_cdf(xs)
    assert np.all(np.diff(F) >= 0) and F.min() >= 0 and F.max() <= 1
    dens = tw_density(xs)
    assert np.all(dens >= 0)
    z, w = np.polynomial.legendre.leggauss(200)
    assert np.sum(9.0 * w * tw_density(9.0 * z - 1.0)) == pytest.approx(1.0, abs=1e-4)


def test_dual_route_agreement():
    oracle = np.array([fredholm_airy_oracle(x) for x in GRID29])
    assert np.max(np.abs(oracle - tw_cdf(GRID29))) < 1e-6
    assert np.all(np.diff(oracle) >= 0)
    assert fredholm_airy_oracle(8.0) == pytest.approx(1.0, abs=1e-9)


def test_oracle_reports_non_convergence():
    with pytest.raises(FredholmError):
        fredholm_airy_oracle(-8.0, start=4, max_order=8, tol=1e-14)


def test_means_agree():
    mp, mf = tw_mean_painleve(), tw_mean_fredholm()
    assert abs(mp - mf) < 1e-3
    # the determinant reproduces the known GUE mean
    assert mf == pytest.approx(-1.771, abs=1e-3)


def test_limit_cdf_examples():
    xs = np.linspace(-6.0, 4.0, 51)
    assert np.allclose(limit_cdf(xs, 1), tw_cdf(xs))
    assert limit_cdf(0.0, 2) == pytest.approx(tw_cdf(0.0) ** 2, abs=1e-15)
    for m in range(1, 6):
        assert np.all(limit_cdf(xs, m) <= tw_cdf(m ** (-2 / 3) * xs) + 1e-15)


@pytest.mark.parametrize("m", range(1, 6))
def test_composite_law_is_a_cdf(m):
    xs = np.linspace(-10.0 * m ** (2 / 3), 8.0 * m ** (2 / 3), 1001)
    G = limit_cdf(xs, m)
    assert np.all(np.diff(G) >= 0)
    assert G[0] < 1e-6 and G[-1] > 1 - 1e-8


def test_table_round_trip(tmp_path):
    table = build_table(-8.0, 6.0, 15)
    assert table.tolerance < 1e-6
    assert np.all(np.diff(table.F) >= 0) and np.all(table.q > 0)
    assert np.all(np.diff(table.q) < 0)
    path = tmp_path / "t.csv"
    table.write_csv(path, m=2)
    back = TracyWidomTable.read_csv(path)
    assert np.allclose(back.F, table.F, rtol=1e-14, atol=0)
    assert back.tolerance == pytest.approx(table.tolerance, rel=1e-3)


def test_cached_table(tmp_path):
    first = cached_table(-2.0, 2.0, 5, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    second = cached_table(-2.0, 2.0, 5, cache_dir=tmp_path)
    assert np.allclose(first.F, second.F)
