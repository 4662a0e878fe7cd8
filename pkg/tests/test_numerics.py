import mpmath
import numpy as np
import pytest

from tailgraph.numerics import hurwitz_zeta, log_upper_gamma, upper_gamma

mpmath.mp.dps = 50


def test_hurwitz_zeta_accuracy_contract():
    # 1e-12 relative accuracy over the fitting range, against mpmath
    rng = np.random.default_rng(1)
    s = np.concatenate([rng.uniform(1.000001, 24.0, 120), [1.0000001, 14.0, 24.0]])
    q = np.concatenate(
        [np.arange(1, 40), rng.integers(40, 2_000_000, 81), [1, 64, 64]]
    ).astype(float)
    got = hurwitz_zeta(s, q)
    for i in range(s.size):
        ref = float(mpmath.zeta(mpmath.mpf(float(s[i])), int(q[i])))
        assert got[i] == pytest.approx(ref, rel=1e-12)


def test_hurwitz_zeta_scalar_and_broadcast():
    assert hurwitz_zeta(2.5, 5.0) == pytest.approx(
        float(mpmath.zeta(mpmath.mpf(2.5), 5)), rel=1e-13
    )
    out = hurwitz_zeta(np.array([2.0, 3.0]), 5.0)
    assert out.shape == (2,)
    out = hurwitz_zeta(2.0, np.array([[5.0, 6.0], [7.0, 8.0]]))
    assert out.shape == (2, 2)


def test_hurwitz_zeta_matches_scipy():
    from scipy.special import zeta as scipy_zeta

    rng = np.random.default_rng(2)
    s = rng.uniform(1.1, 10.0, 200)
    q = rng.integers(1, 10_000, 200).astype(float)
    assert np.allclose(hurwitz_zeta(s, q), scipy_zeta(s, q), rtol=1e-12)


@pytest.mark.parametrize(
    "s", [2.7, 1.3, 0.5, -0.1, -0.3, -0.9, -1.5, -2.2, -3.9, -4.5, -6.3]
)
@pytest.mark.parametrize("x", [0.05, 0.4, 0.9, 2.0, 7.7, 29.0, 31.0, 120.0, 800.0])
def test_log_upper_gamma_vs_mpmath(s, x):
    ref = mpmath.log(mpmath.gammainc(mpmath.mpf(s), x, mpmath.inf))
    assert log_upper_gamma(s, x) == pytest.approx(float(ref), abs=1e-10)


def test_upper_gamma_positive_order_matches_scipy():
    from scipy.special import gamma, gammaincc

    assert upper_gamma(1.7, 2.3) == pytest.approx(
        gammaincc(1.7, 2.3) * gamma(1.7), rel=1e-12
    )


def test_upper_gamma_vectorized():
    xs = np.array([0.5, 3.0, 50.0, 900.0])
    out = log_upper_gamma(-1.2, xs)
    assert out.shape == xs.shape
    for x, lg in zip(xs, out):
        ref = mpmath.log(mpmath.gammainc(mpmath.mpf(-1.2), float(x), mpmath.inf))
        assert lg == pytest.approx(float(ref), abs=1e-9)
