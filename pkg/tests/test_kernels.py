import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ebem2d import make_material
from ebem2d.kernels import (
    fundamental_solution,
    i3_v,
    kernel_v,
    kernel_v_reduced,
    kernel_w,
    phi_gamma,
    phi_hat_gamma,
    traction_of_kernel_v_fd,
)

MAT = make_material(2.0, 1.0, 1.0)
MAT3 = make_material(7.0, 1.0, 1.0)

angles = st.floats(0.0, 2 * math.pi - 1e-9)


def rvec(r, theta):
    return (r * math.cos(theta), r * math.sin(theta))


_XG, _WG = np.polynomial.legendre.leggauss(60)
_U = (_XG + 1.0) / 2.0
_WU = _WG / 2.0


def integrate_with_sqrt_ends(f, cuts):
    """Gauss integration of f over consecutive [cuts[k], cuts[k+1]],
    with nodes clustered quadratically toward both ends of every piece
    (inverse-square-root integrable singularities at the wave fronts)."""
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a < 1e-14:
            continue
        m = 0.5 * (a + b)
        for lo, hi in ((a, m), (m, b)):
            anchor = a if lo == a else b
            other = m
            tt = anchor + (other - anchor) * _U * _U
            w = _WU * 2.0 * abs(other - anchor) * _U
            total += sum(wi * f(t) for t, wi in zip(tt, w))
    return total


@given(r=st.floats(0.05, 0.9), theta=angles, delta=st.floats(1.0, 3.0))
@settings(max_examples=60, deadline=None)
def test_reduced_form_matches_per_front_sum(r, theta, delta):
    # behind both wave fronts the per-front form and the algebraically
    # reduced closed form must agree to near machine precision
    p = rvec(r, theta)
    assert r < MAT.c_s * delta
    for i in range(2):
        for j in range(2):
            a = kernel_v(i, j, p, delta, MAT)
            b = kernel_v_reduced(i, j, p, delta, MAT)
            assert a == pytest.approx(b, abs=1e-12, rel=1e-12)


@given(r=st.floats(1e-2, 1.5), theta=angles, delta=st.floats(0.2, 1.2))
@settings(max_examples=40, deadline=None)
def test_kernel_v_is_time_integral_of_fundamental_solution(r, theta, delta):
    p = rvec(r, theta)
    lo = r / MAT.c_p
    if lo >= delta:
        for i in range(2):
            for j in range(2):
                assert kernel_v(i, j, p, delta, MAT) == 0.0
        return
    cuts = sorted({lo, min(max(r / MAT.c_s, lo), delta), delta})
    for i in range(2):
        for j in range(2):
            ref = integrate_with_sqrt_ends(
                lambda t: fundamental_solution(i, j, p, t, MAT), cuts)
            ours = kernel_v(i, j, p, delta, MAT) / (2 * math.pi * MAT.rho)
            assert ours == pytest.approx(ref, abs=5e-8)


def test_phi_gating_and_values():
    assert phi_gamma(0.0, 1.0, 2.0) == pytest.approx(2.0)
    assert phi_gamma(2.0, 1.0, 2.0) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        phi_gamma(2.1, 1.0, 2.0)
    assert phi_hat_gamma(2.0, 1.0, 2.0) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        phi_hat_gamma(0.0, 1.0, 2.0)


@given(r=st.floats(5e-3, 0.5), theta=angles, delta=st.floats(0.6, 1.5))
@settings(max_examples=30, deadline=None)
def test_i3_matches_numerical_second_time_integral(r, theta, delta):
    p = rvec(r, theta)
    cuts = sorted({0.0, min(r / MAT.c_p, delta), min(r / MAT.c_s, delta), delta})
    for i in range(2):
        for j in range(2):
            ref = integrate_with_sqrt_ends(
                lambda s: (delta - s) * kernel_v(i, j, p, s, MAT), cuts)
            assert i3_v(i, j, p, delta, MAT) == pytest.approx(ref, abs=5e-8)


@pytest.mark.parametrize("mat", [MAT, MAT3])
def test_kernel_w_matches_finite_difference_traction_at_order_2(mat):
    # second-order central differences of the twice time-integrated kernel
    # must converge to the closed-form double traction at rate 2
    rng = np.random.default_rng(7)
    delta = 1.0
    orders = []
    for _ in range(6):
        r = rng.uniform(0.3, 0.8)
        theta = rng.uniform(0.0, 2 * math.pi)
        p = rvec(r, theta)
        n_x = rvec(1.0, rng.uniform(0.0, 2 * math.pi))
        n_xi = rvec(1.0, rng.uniform(0.0, 2 * math.pi))
        i, j = rng.integers(0, 2, size=2)
        exact = kernel_w(i, j, p, delta, mat, n_x, n_xi)
        h1, h2 = 2e-3, 1e-3
        e1 = abs(traction_of_kernel_v_fd(i, j, p, delta, mat, n_x, n_xi, h1) - exact)
        e2 = abs(traction_of_kernel_v_fd(i, j, p, delta, mat, n_x, n_xi, h2) - exact)
        if e2 > 1e-13:
            orders.append(math.log2(e1 / e2))
    assert orders, "all finite-difference errors at rounding level"
    assert np.mean(orders) == pytest.approx(2.0, abs=0.2)


def test_kernel_w_symmetry_in_arguments():
    # exchanging field and source point (r -> -r) together with the two
    # normals leaves the kernel invariant
    p = (0.31, -0.22)
    n_x = (0.6, 0.8)
    n_xi = (-0.8, 0.6)
    for i in range(2):
        for j in range(2):
            a = kernel_w(i, j, p, 0.9, MAT, n_x, n_xi)
            b = kernel_w(j, i, (-p[0], -p[1]), 0.9, MAT, n_xi, n_x)
            assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_kernels_vanish_before_first_front():
    p = (1.0, 0.5)
    r = math.hypot(*p)
    delta = r / MAT.c_p * 0.999
    for i in range(2):
        for j in range(2):
            assert kernel_v(i, j, p, delta, MAT) == 0.0
            assert kernel_w(i, j, p, delta, MAT, (0, 1), (0, 1)) == 0.0
            assert i3_v(i, j, p, delta, MAT) == 0.0
