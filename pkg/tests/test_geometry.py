import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from toroharm.geometry import (
    CartesianPoint,
    DegenerateLocusError,
    TorusDomain,
    ToroidalPoint,
    cartesian_arrays,
    sample_grid,
    to_cartesian,
    to_toroidal,
    toroidal_arrays,
)


@given(
    eta=st.floats(0.05, 8.0),
    theta=st.floats(-math.pi, math.pi, exclude_max=True),
    phi=st.floats(0.0, 2.0 * math.pi, exclude_max=True),
)
@settings(max_examples=200, deadline=None)
def test_round_trip(eta, theta, phi):
    p = ToroidalPoint(eta, theta, phi)
    q = to_toroidal(to_cartesian(p))
    assert q.eta == pytest.approx(eta, rel=1e-9, abs=1e-9)
    # angles compare on the circle
    assert math.cos(q.theta - theta) == pytest.approx(1.0, abs=1e-9)
    assert math.cos(q.phi - phi) == pytest.approx(1.0, abs=1e-9)


def test_round_trip_cartesian_start():
    x = CartesianPoint(0.3, 0.9, -0.4)
    y = to_cartesian(to_toroidal(x))
    assert_allclose([y.x0, y.x1, y.x2], [x.x0, x.x1, x.x2], atol=1e-12)


def test_degenerate_axis():
    with pytest.raises(DegenerateLocusError):
        to_toroidal(CartesianPoint(0.7, 0.0, 0.0))


def test_degenerate_limit_circle():
    with pytest.raises(DegenerateLocusError):
        to_toroidal(CartesianPoint(0.0, 1.0, 0.0))


def test_array_conversions_match_pointwise():
    eta = np.array([0.7, 1.3])
    theta = np.array([0.2, -2.0])
    phi = np.array([1.0, 4.0])
    x0, x1, x2 = cartesian_arrays(eta, theta, phi)
    for i in range(2):
        ref = to_cartesian(ToroidalPoint(eta[i], theta[i], phi[i]))
        assert_allclose([x0[i], x1[i], x2[i]], [ref.x0, ref.x1, ref.x2])
    e2, t2, p2 = toroidal_arrays(x0, x1, x2)
    assert_allclose(e2, eta, atol=1e-12)


def test_domain_volume_and_slice():
    dom = TorusDomain(1.0)
    assert_allclose(
        dom.volume(), 2 * math.pi**2 * math.cosh(1.0) / math.sinh(1.0) ** 3)
    r_in, r_out = dom.slice_radii()
    assert_allclose(r_in * r_out, 1.0, rtol=1e-14)
    assert r_in < 1.0 < r_out


def test_domain_contains():
    dom = TorusDomain(1.0)
    inside = to_cartesian(ToroidalPoint(1.5, 0.3, 0.1))
    outside = to_cartesian(ToroidalPoint(0.5, 0.3, 0.1))
    assert dom.contains(inside)
    assert not dom.contains(outside)
    assert not dom.contains(CartesianPoint(2.0, 0.0, 0.0))  # on the axis


def test_sample_grid_weights_sum_to_shifted_volume():
    dom = TorusDomain(1.0)
    nodes = sample_grid(dom, 10, 24, 8, margin=0.3)
    total = sum(w for _, w in nodes)
    ref = 2 * math.pi**2 * math.cosh(1.3) / math.sinh(1.3) ** 3
    assert_allclose(total, ref, rtol=1e-6)


def test_sample_grid_respects_margin():
    dom = TorusDomain(1.0)
    for x, _ in sample_grid(dom, 5, 6, 6, margin=0.3):
        assert to_toroidal(x).eta >= 1.3 - 1e-12


def test_sample_grid_single_phi_in_half_plane():
    dom = TorusDomain(1.0)
    nodes = sample_grid(dom, 4, 5, 1, margin=0.2)
    assert all(abs(x.x2) < 1e-14 and x.x1 > 0 for x, _ in nodes)


def test_sample_grid_no_duplicate_nodes():
    dom = TorusDomain(1.0)
    nodes = sample_grid(dom, 4, 5, 3, margin=0.2)
    coords = {(round(x.x0, 12), round(x.x1, 12), round(x.x2, 12)) for x, _ in nodes}
    assert len(coords) == len(nodes)


def test_sample_grid_rejects_bad_counts():
    with pytest.raises(ValueError):
        sample_grid(TorusDomain(1.0), 0, 4, 4, margin=0.2)
    with pytest.raises(ValueError):
        sample_grid(TorusDomain(1.0), 4, 4, 4, margin=0.0)
