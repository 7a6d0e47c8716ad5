import math

import numpy as np
from numpy.testing import assert_allclose

from toroharm.geometry import (
    CartesianPoint,
    TorusDomain,
    ToroidalPoint,
    to_cartesian,
    to_toroidal,
)
from toroharm.harmonics import HarmonicIndex, eval_I
from toroharm.monogenics import (
    COH_ORIENTATION,
    E1,
    E2,
    E3,
    Psi,
    Quaternion,
    ReducedQuaternion,
    cohomology,
    eval_T,
    eval_T0,
    eval_T0_batch,
    eval_T_batch,
    eval_W,
    eval_W_batch,
    fueter,
    fueter_bar,
    psi,
    t_is_zero,
    teodorescu,
)

P = ToroidalPoint(1.4, 0.8, 0.5)
X = to_cartesian(P)


def test_quaternion_algebra():
    assert E1 * E2 == E3
    assert E2 * E3 == E1
    assert E3 * E1 == E2
    assert E1 * E1 == Quaternion(-1.0, 0.0, 0.0, 0.0)
    q = Quaternion(1.0, 2.0, -1.0, 0.5)
    r = Quaternion(0.3, -0.2, 1.0, 2.0)
    # norm is multiplicative for quaternions
    assert_allclose((q * r).norm(), q.norm() * r.norm(), rtol=1e-13)


def test_reduced_quaternion_embedding():
    v = ReducedQuaternion(1.0, 2.0, 3.0)
    q = v.to_quaternion()
    assert q == Quaternion(1.0, 2.0, 3.0, 0.0)
    assert_allclose(v.norm(), math.sqrt(14.0))


def test_w_is_monogenic_constant():
    for m in (-2, -1, 0, 3):
        for s in (1, -1):
            assert fueter_bar(lambda y: eval_W(m, s, y), X).norm() < 1e-7
            assert fueter(lambda y: eval_W(m, s, y), X).norm() < 1e-7


def test_w_e3_relation():
    # multiplying W by e3 on the right swaps the family and flips a sign
    for m in (-1, 0, 2):
        for s in (1, -1):
            lhs = eval_W(m, s, X).to_quaternion() * E3
            rhs = -s * eval_W(m, -s, X).to_quaternion()
            assert (lhs - rhs).norm() < 1e-14


def test_w_batch_matches_pointwise():
    x1 = np.array([0.8, 1.1])
    x2 = np.array([-0.2, 0.4])
    for m, s in ((2, 1), (-1, -1)):
        batch = eval_W_batch(m, s, x1, x2)
        for i in range(2):
            v = eval_W(m, s, CartesianPoint(0.0, x1[i], x2[i]))
            assert_allclose(batch[:, i], [v.a0, v.a1, v.a2], rtol=1e-13)


def test_t_zero_slots():
    assert t_is_zero(1, 0, 1, 1)
    assert t_is_zero(1, 2, 1, -1)
    assert not t_is_zero(1, 0, -1, 1)
    assert not t_is_zero(2, 0, 1, 1)
    v = eval_T(HarmonicIndex(1, 2, 1, 1), P)
    assert v.norm() == 0.0


def test_t_monogenic_fd():
    idx = HarmonicIndex(2, 1, 1, 1)
    r = fueter_bar(lambda y: eval_T(idx, to_toroidal(y)), X)
    assert r.norm() < 1e-5


def test_t_batch_matches_pointwise():
    idx = HarmonicIndex(3, 1, -1, -1)
    eta = np.array([1.3, 1.9])
    theta = np.array([0.4, -0.7])
    phi = np.array([0.1, 2.3])
    batch = eval_T_batch(idx, eta, theta, phi)
    for i in range(2):
        v = eval_T(idx, ToroidalPoint(eta[i], theta[i], phi[i]))
        assert_allclose(batch[:, i], [v.a0, v.a1, v.a2], rtol=1e-12)


def test_teodorescu_closed_form():
    r_in, r_out = 0.5, 2.0
    w = 1.2 + 0.4j
    val = teodorescu(lambda z: np.ones_like(z), w, r_in, r_out, tol=1e-9)
    assert_allclose(val, np.conj(w) - r_in**2 / w, rtol=1e-7)


def test_psi_of_constant():
    dom = TorusDomain(1.0)
    v = psi(lambda x0, x1, x2: np.ones(np.broadcast(x0, x1, x2).shape), dom, X)
    assert_allclose([v.a0, v.a1, v.a2], [1.0, 0.0, 0.0], atol=1e-9)


def test_psi_of_x0_closed_form():
    dom = TorusDomain(1.0)
    r_in, _ = dom.slice_radii()
    op = Psi(lambda x0, x1, x2: np.broadcast_arrays(np.asarray(x0, float), x1)[0],
             dom, tol=1e-9)
    v = op(X)
    rho2 = X.x1**2 + X.x2**2
    f = 0.5 * (1.0 - r_in**2 / rho2)
    assert_allclose([v.a0, v.a1, v.a2], [X.x0, f * X.x1, f * X.x2], atol=1e-8)


def test_psi_preserves_scalar_part():
    # completion of a harmonic scalar leaves the scalar slot untouched
    m, mu = 2, 1
    v = eval_T0(m, mu, P)
    assert_allclose(v.a0, eval_I(HarmonicIndex(0, m, 1, mu), P), atol=1e-10)


def test_t0_batch_matches_pointwise():
    v = eval_T0(1, -1, P)
    batch = eval_T0_batch(1, -1, np.array([X.x0]), np.array([X.x1]), np.array([X.x2]))
    assert_allclose(batch[:, 0], [v.a0, v.a1, v.a2], atol=1e-7)


def test_cohomology_generator():
    assert_allclose(cohomology(lambda x: eval_W(-1, -1, x)), 1.0, atol=1e-12)
    # sign convention is fixed against the raw parametrization
    assert COH_ORIENTATION == -1.0


def test_cohomology_vanishes_elsewhere():
    assert abs(cohomology(lambda x: eval_W(2, 1, x))) < 1e-12
    idx = HarmonicIndex(2, 0, 1, 1)
    assert abs(cohomology(lambda x: eval_T(idx, to_toroidal(x)),
                          n_nodes=64, radius=0.9)) < 1e-8


def test_cohomology_radius_independent():
    a = cohomology(lambda x: eval_W(-1, -1, x), radius=0.7)
    b = cohomology(lambda x: eval_W(-1, -1, x), radius=1.3)
    assert_allclose(a, b, atol=1e-12)
