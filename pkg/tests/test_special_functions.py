import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from toroharm.special_functions import (
    elliptic_E,
    elliptic_K,
    gamma_half,
    gamma_half_ratio,
    legendre_q_half,
    legendre_q_quadrature,
    legendre_q_table,
    q_half_grid,
)


def _mp_q(n, m, t):
    return float(mp.re(mp.legenq(n - mp.mpf(1) / 2, m, mp.mpf(t), type=3)))


def test_elliptic_against_scipy():
    k = np.linspace(0.01, 0.99, 25)
    assert_allclose(elliptic_K(k), special.ellipk(k**2), rtol=1e-13)
    assert_allclose(elliptic_E(k), special.ellipe(k**2), rtol=1e-13)


def test_gamma_half_values():
    assert_allclose(gamma_half(0), math.sqrt(math.pi), rtol=1e-15)
    assert_allclose(gamma_half(3), 15.0 / 8.0 * math.sqrt(math.pi), rtol=1e-14)
    # exact rational ratio Gamma(n+m+1/2)/Gamma(n-m+1/2)
    assert float(gamma_half_ratio(4, 2)) == pytest.approx(
        gamma_half(6) / gamma_half(2), rel=1e-14)
    assert gamma_half_ratio(4, 2) * gamma_half_ratio(4, -2) == 1


@pytest.mark.parametrize("t", [1.0001, 1.1, 2.0, 10.0, 500.0])
def test_seeds_against_mpmath(t):
    q = q_half_grid(1, 0, np.array([t]))
    assert_allclose(q[0, 0, 0], _mp_q(0, 0, t), rtol=1e-13)
    assert_allclose(q[1, 0, 0], _mp_q(1, 0, t), rtol=1e-13)


@pytest.mark.parametrize("n,m,t", [
    (5, 0, 1.2), (10, 3, 1.5431), (20, 6, 3.0), (30, 10, 7.0),
    (8, 2, 1.05), (3, 1, 100.0), (12, 4, 2.2),
])
def test_grid_against_mpmath(n, m, t):
    got = float(q_half_grid(n, m, np.array([t]))[n, m, 0])
    assert_allclose(got, _mp_q(n, m, t), rtol=5e-12)


def test_large_argument_branch():
    # the recurrence would overflow here; the asymptotic branch takes over
    t = 1e10
    got = float(q_half_grid(2, 1, np.array([t]))[2, 1, 0])
    ref = _mp_q(2, 1, t)
    assert_allclose(got, ref, rtol=1e-8)


def test_quadrature_oracle_matches_fast_path():
    for n, m, t in [(0, 0, 1.3), (4, 2, 2.7), (11, 6, 7.6913), (9, 4, 6.99)]:
        fast = float(q_half_grid(n, m, np.array([t]))[n, m, 0])
        slow = legendre_q_quadrature(n, m, t)
        assert_allclose(fast, slow, rtol=1e-9)


def test_degree_recurrence_on_grid():
    t = np.linspace(1.1, 10.0, 31)
    q = q_half_grid(16, 5, t)
    for m in range(6):
        for n in range(1, 15):
            lhs = (n - m + 0.5) * q[n + 1, m]
            rhs = 2 * n * t * q[n, m] - (n + m - 0.5) * q[n - 1, m]
            scale = np.abs(2 * n * t * q[n, m]) + np.abs(lhs)
            assert np.max(np.abs(lhs - rhs) / scale) < 1e-12


def test_table_wrapper():
    tab = legendre_q_table(6, 3, 1.7)
    assert_allclose(tab.value(4, 2), legendre_q_half(4, 2, 1.7), rtol=1e-14)
    with pytest.raises(IndexError):
        tab.value(7, 0)


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        legendre_q_quadrature(2, 1, 0.9)
    with pytest.raises(ValueError):
        legendre_q_quadrature(-1, 0, 2.0)
