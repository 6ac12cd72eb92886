"""Closed-form elastodynamic kernels.

nu_v is the single-layer fundamental solution integrated once in time
(scaled by 2*pi*rho); nu_w is its double traction after a second,
ramp-weighted time integration.  Both switch on across the two wave fronts
r = c_gamma * Delta; exactly on a front the gamma term is treated as "not
yet arrived" (H[0] = 0).
"""

from __future__ import annotations

import math

import numpy as np

from .core_model import Material
from ._kernel_w_gen import nu_w_pieces


def phi_gamma(r: float, delta: float, c: float) -> float:
    if r < 0 or c * delta < r:
        raise ValueError("need 0 <= r <= c*delta")
    return math.sqrt(c * c * delta * delta - r * r)


def phi_hat_gamma(r: float, delta: float, c: float) -> float:
    if r <= 0 or c * delta < r:
        raise ValueError("need 0 < r <= c*delta")
    return math.log(math.sqrt(c * c * delta * delta - r * r) + c * delta) - math.log(r)


def fundamental_solution(i: int, j: int, r_vec, t_minus_tau: float, mat: Material) -> float:
    r1, r2 = r_vec
    r = math.hypot(r1, r2)
    tt = t_minus_tau
    rv = (r1, r2)
    out = 0.0
    dij = 1.0 if i == j else 0.0
    if mat.c_p * tt > r:
        c = mat.c_p
        phi = math.sqrt(c * c * tt * tt - r * r)
        out += (rv[i] * rv[j] / r**4 * (2 * c * c * tt * tt - r * r) / phi
                - dij / (r * r) * phi) / (2 * math.pi * mat.rho * c)
    if mat.c_s * tt > r:
        c = mat.c_s
        phi = math.sqrt(c * c * tt * tt - r * r)
        out -= (rv[i] * rv[j] / r**4 * (2 * c * c * tt * tt - r * r) / phi
                - dij / (r * r) * (c * c * tt * tt) / phi) / (2 * math.pi * mat.rho * c)
    return out


def kernel_v(i: int, j: int, r_vec, delta: float, mat: Material) -> float:
    """General (per-front) form of nu_v."""
    r1, r2 = r_vec
    r = math.hypot(r1, r2)
    if r <= 0:
        raise ValueError("r = 0: logarithmic singularity")
    rv = (r1, r2)
    dij = 1.0 if i == j else 0.0
    a = rv[i] * rv[j] / r**4 - dij / (2 * r * r)
    out = 0.0
    for c, sg in ((mat.c_p, 1.0), (mat.c_s, -1.0)):
        if c * delta > r:
            phi = math.sqrt(c * c * delta * delta - r * r)
            out += sg * delta * a * phi / c
            out += dij / (2 * c * c) * (math.log(phi + c * delta) - math.log(r))
    return out


def kernel_v_reduced(i: int, j: int, r_vec, delta: float, mat: Material) -> float:
    """Reduced form, valid where both fronts have passed (r < c_s*delta)."""
    r1, r2 = r_vec
    r = math.hypot(r1, r2)
    cp, cs = mat.c_p, mat.c_s
    if not (0 < r < cs * delta):
        raise ValueError("reduced form needs 0 < r < c_s*delta")
    rv = (r1, r2)
    dij = 1.0 if i == j else 0.0
    phip = math.sqrt(cp * cp * delta * delta - r * r)
    phis = math.sqrt(cs * cs * delta * delta - r * r)
    out = (rv[i] * rv[j] / (r * r) - dij / 2) * delta * (cp * cp - cs * cs) / (
        cp * cs * (cs * phip + cp * phis))
    out += dij / 2 * (-(cp * cp + cs * cs) / (cp * cp * cs * cs) * math.log(r)
                      + math.log(cp * delta + phip) / (cp * cp)
                      + math.log(cs * delta + phis) / (cs * cs))
    return out


def i3_v(i: int, j: int, r_vec, delta: float, mat: Material) -> float:
    """Second time integral int_0^delta (delta - s) nu_v(r; s) ds, closed form."""
    r1, r2 = r_vec
    r = math.hypot(r1, r2)
    if r <= 0:
        raise ValueError("r = 0")
    rv = (r1, r2)
    dij = 1.0 if i == j else 0.0
    a = rv[i] * rv[j] / r**4 - dij / (2 * r * r)
    out = 0.0
    d = delta
    logr = math.log(r)
    for c, sg in ((mat.c_p, 1.0), (mat.c_s, -1.0)):
        if c * d <= r:
            continue
        phi = math.sqrt(c * c * d * d - r * r)
        lg = math.log(c * d + phi)
        w32 = phi**3
        # j1 = int (d-s) s phi ds over [r/c, d]
        int_w32_u = d * w32 / 4 - 3 * r * r * d * phi / 8 + 3 * r**4 * lg / (8 * c)
        int_w32_l = 3 * r**4 * logr / (8 * c)
        a2u = (d * w32 - int_w32_u) / (3 * c * c)
        a2l = -int_w32_l / (3 * c * c)
        j1 = d * w32 / (3 * c * c) - (a2u - a2l)
        # j2 = int (d-s) phihat ds over [r/c, d]
        b1u = d * lg - phi / c - d * logr
        int_s2phi_u = d * phi / (2 * c * c) + r * r * lg / (2 * c**3)
        int_s2phi_l = r * r * logr / (2 * c**3)
        b2u = d * d * lg / 2 - c * int_s2phi_u / 2 - d * d * logr / 2
        b2l = -c * int_s2phi_l / 2
        j2 = d * b1u - (b2u - b2l)
        out += sg * a * j1 / c
        out += dij * j2 / (2 * c * c)
    return out


def kernel_w(i: int, j: int, r_vec, delta: float, mat: Material, n_x, n_xi) -> float:
    """Hypersingular kernel: double traction of i3_v, O(r^-2) at short range."""
    r1, r2 = r_vec
    r = math.hypot(r1, r2)
    if r <= 0:
        raise ValueError("r = 0: strong singularity")
    pieces = nu_w_pieces(r1, r2, delta, mat.c_p, mat.c_s, mat.rho,
                         n_x[0], n_x[1], n_xi[0], n_xi[1])
    out = 0.0
    if mat.c_p * delta > r:
        out += pieces[0, i, j]
    if mat.c_s * delta > r:
        out += pieces[1, i, j]
    return out


def traction_of_kernel_v_fd(i: int, j: int, r_vec, delta: float, mat: Material,
                            n_x, n_xi, step: float = 1e-3) -> float:
    """Finite-difference double traction of i3_v (test oracle for kernel_w)."""
    lam, mu = mat.lam, mat.mu

    def hooke(a, h, k, l):
        d = lambda p, q: 1.0 if p == q else 0.0
        return lam * d(a, h) * d(k, l) + mu * (d(a, k) * d(h, l) + d(a, l) * d(h, k))

    p = np.asarray(r_vec, dtype=float)
    h = step
    d2 = {}
    for l in range(2):
        for lp in range(2):
            e1 = np.eye(2)[l] * h
            e2 = np.eye(2)[lp] * h
            d2[(l, lp)] = np.array(
                [[(i3_v(k, kp, p + e1 + e2, delta, mat)
                   - i3_v(k, kp, p + e1 - e2, delta, mat)
                   - i3_v(k, kp, p - e1 + e2, delta, mat)
                   + i3_v(k, kp, p - e1 - e2, delta, mat)) / (4 * h * h)
                  for kp in range(2)] for k in range(2)])
    total = 0.0
    for hh in range(2):
        for k in range(2):
            for l in range(2):
                c1 = hooke(i, hh, k, l)
                if c1 == 0.0:
                    continue
                for hp in range(2):
                    for kp in range(2):
                        for lp in range(2):
                            c2 = hooke(j, hp, kp, lp)
                            if c2 == 0.0:
                                continue
                            # the xi-derivative flips sign: d/dxi = -d/dr
                            total -= c1 * c2 * d2[(l, lp)][k, kp] * n_x[hh] * n_xi[hp]
    return total
