"""Galerkin double integrals of the space-time kernels.

Two evaluation paths:

- Collinear pairs (flat crack, or two elements on the same polygon side).
  The double integral collapses to a single integral of the kernel against
  the cross-correlation R(u) of the two shape polynomials,
      I(Delta) = int R(u) nu(u; Delta) du,
  with R piecewise polynomial.  The u-axis is split at the correlation
  breakpoints, at u = 0 and at the wave fronts +-c_gamma*Delta.  The
  -log|u| part is integrated exactly against R, the hypersingular u^-2
  part as a Hadamard finite part, fronts are absorbed by a sqrt
  substitution, and everything smooth goes to Gauss-Legendre with
  geometric subdivision toward near-singular endpoints.

- General (non-collinear) pairs: outer Gauss over the field element split
  at the wavefront circles around the inner endpoints, inner integral
  split at the wavefront circles around each field point, with the exact
  point-to-segment log integral subtracted in the two-front region for
  piecewise-constant shapes.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._kernel_w_gen import nu_w_pieces
from ._kernel_w_series import nu_w_collinear_coeffs

NG = 20  # default Gauss order
GEO_RATIO = 3.0  # geometric subdivision ratio toward near-singular endpoints
SERIES_FRACTION = 0.25  # hypersingular series used for |u| < fraction * cs * d


def gauss_legendre(n: int):
    """Gauss-Legendre rule on [0,1]."""
    if not (1 <= n <= 64):
        raise ValueError("n out of range")
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


_GX, _GW = gauss_legendre(NG)
_GX12, _GW12 = gauss_legendre(12)


# ----------------------------------------------------------------------
# shape-polynomial cross-correlations


def correlation_pieces(a1, b1, f_coeffs, a2, b2, g_coeffs,
                       f_about=0.0, g_about=0.0):
    """Pieces of R(u) = int f(x) g(x - u) dx for shapes supported on
    [a1,b1] / [a2,b2] (a < b), with f, g polynomials in the line coordinate
    expanded about ``f_about`` / ``g_about``.

    Expanding the shapes about their element midpoints keeps the evaluation
    well conditioned even for strongly graded meshes, where coefficients
    about the line origin grow like (1/h)^p and cancel catastrophically.

    Returns (bounds (k,2), centers (k,), coeffs (k, D+2)) with coefficients
    about each piece center; R has support [a1-b2, b1-a2].
    """
    f = np.polynomial.Polynomial(f_coeffs)
    g = np.polynomial.Polynomial(g_coeffs)
    deg = (len(f_coeffs) - 1) + (len(g_coeffs) - 1)
    raw = sorted({a1 - b2, a1 - a2, b1 - b2, b1 - a2})
    span = raw[-1] - raw[0]
    cuts = [raw[0]]
    for u in raw[1:]:
        # merge cuts that differ only by rounding; sliver pieces would put
        # quadrature nodes exactly on wave fronts
        if u - cuts[-1] > 1e-12 * span:
            cuts.append(u)
    gx, gw = gauss_legendre(deg // 2 + 1)
    nfit = deg + 2
    bounds, centers, coeffs = [], [], []
    for u0, u1 in zip(cuts[:-1], cuts[1:]):
        if u1 - u0 < 1e-300:
            continue
        uc = 0.5 * (u0 + u1)
        hl = 0.5 * (u1 - u0)
        t = np.cos(np.pi * (np.arange(nfit) + 0.5) / nfit)
        uu = uc + hl * t
        vals = np.empty(nfit)
        for k, u in enumerate(uu):
            lo = max(a1, a2 + u)
            hi = min(b1, b2 + u)
            if hi <= lo:
                vals[k] = 0.0
                continue
            xs = lo + (hi - lo) * gx
            vals[k] = (hi - lo) * np.sum(
                gw * f(xs - f_about) * g(xs - u - g_about))
        ct = np.linalg.solve(np.vander(t, nfit, increasing=True), vals)
        cu = ct / hl ** np.arange(nfit)
        bounds.append((u0, u1))
        centers.append(uc)
        coeffs.append(cu)
    return np.array(bounds), np.array(centers), np.array(coeffs)


# ----------------------------------------------------------------------
# polynomial helpers (numba)


@njit(cache=True, inline="always")
def _polyval(c, x):
    v = 0.0
    for k in range(len(c) - 1, -1, -1):
        v = v * x + c[k]
    return v


@njit(cache=True)
def _shift_to_zero(c, uc, sgn):
    """Coefficients about w=0 of the polynomial u -> R(u) with u = sgn*w,
    where R is given by coefficients c about uc."""
    n = len(c)
    out = np.zeros(n)
    for k in range(n):
        binom = 1.0
        pw = 1.0
        for j in range(k, -1, -1):
            out[j] += c[k] * binom * pw
            binom *= j / (k - j + 1.0)
            pw *= -uc
    if sgn < 0:
        for k in range(1, n, 2):
            out[k] = -out[k]
    return out


@njit(cache=True)
def _log_int_zero_m(c0, L, m):
    """int_0^L (sum c0[k] w^k) w^m log(w) dw, exact."""
    s = 0.0
    pw = L ** (m + 1.0)
    lgl = math.log(L)
    for k in range(len(c0)):
        m1 = k + m + 1.0
        s += c0[k] * pw * (lgl / m1 - 1.0 / (m1 * m1))
        pw *= L
    return s


@njit(cache=True)
def _mono_int_zero(c0, L, m):
    """int_0^L (sum c0[k] w^k) w^m dw, exact."""
    s = 0.0
    pw = L ** (m + 1.0)
    for k in range(len(c0)):
        s += c0[k] * pw / (k + m + 1.0)
        pw *= L
    return s


@njit(cache=True)
def _fp_int_zero(c0, L):
    """Hadamard finite part of int_0^L (sum c0[k] w^k) / w^2 dw.

    The divergent 1/eps and log(eps) terms are dropped; summed over all
    element pairs of a continuous basis these dropped terms cancel, so the
    global bilinear form is the true finite part.
    """
    s = 0.0
    for k in range(len(c0)):
        if k == 1:
            s += c0[k] * math.log(L)
        else:
            s += c0[k] * L ** (k - 1.0) / (k - 1.0)
    return s


# ----------------------------------------------------------------------
# collinear single-layer kernel factors


@njit(cache=True, inline="always")
def _alpha_v(w, d, cp, cs):
    """Direction factor of nu_v on the axis: Delta*(H_P phi_p/c_p -
    H_S phi_s/c_s)/w^2, in the cancellation-free reduced form where both
    fronts have passed."""
    if w < cs * d:
        phip = math.sqrt(cp * cp * d * d - w * w)
        phis = math.sqrt(cs * cs * d * d - w * w)
        return d * (cp * cp - cs * cs) / (cp * cs * (cs * phip + cp * phis))
    phip = math.sqrt(cp * cp * d * d - w * w)
    return d * phip / (cp * w * w)


@njit(cache=True, inline="always")
def _bsmooth_v(w, d, cp, cs):
    """phi-hat part of nu_v on the axis with K2*log(w) removed in the
    two-front region (K2 = 1/cp^2 + 1/cs^2); in the P-only region the log
    is kept (w is bounded away from zero there)."""
    if w < cs * d:
        phip = math.sqrt(cp * cp * d * d - w * w)
        phis = math.sqrt(cs * cs * d * d - w * w)
        return (math.log(cp * d + phip) / (cp * cp)
                + math.log(cs * d + phis) / (cs * cs))
    phip = math.sqrt(cp * cp * d * d - w * w)
    return (math.log(cp * d + phip) - math.log(w)) / (cp * cp)


@njit(cache=True)
def _gauss_v_plain(c, uc, sgn, w0, w1, d, cp, cs, logw_coeff,
                   front_left, front_right, gx, gw):
    """Gauss of R * (alpha, bsmooth + logw_coeff*log(w)) over [w0, w1]
    with sqrt substitution at a single front endpoint."""
    sa = 0.0
    sb = 0.0
    if front_left or front_right:
        vmax = math.sqrt(w1 - w0)
        for k in range(len(gx)):
            v = vmax * gx[k]
            w = w0 + v * v if front_left else w1 - v * v
            jac = 2.0 * v * vmax
            r = _polyval(c, sgn * w - uc)
            bs = _bsmooth_v(w, d, cp, cs)
            if logw_coeff != 0.0:
                bs += logw_coeff * math.log(w)
            sa += gw[k] * jac * r * _alpha_v(w, d, cp, cs)
            sb += gw[k] * jac * r * bs
        return sa, sb
    h = w1 - w0
    for k in range(len(gx)):
        w = w0 + h * gx[k]
        r = _polyval(c, sgn * w - uc)
        bs = _bsmooth_v(w, d, cp, cs)
        if logw_coeff != 0.0:
            bs += logw_coeff * math.log(w)
        sa += gw[k] * h * r * _alpha_v(w, d, cp, cs)
        sb += gw[k] * h * r * bs
    return sa, sb


@njit(cache=True)
def _gauss_v_interval(c, uc, sgn, w0, w1, d, cp, cs, logw_coeff,
                      front_left, front_right, gx, gw):
    if front_left and front_right:
        wm = 0.5 * (w0 + w1)
        a0, b0 = _gauss_v_plain(c, uc, sgn, w0, wm, d, cp, cs, logw_coeff,
                                True, False, gx, gw)
        a1, b1 = _gauss_v_plain(c, uc, sgn, wm, w1, d, cp, cs, logw_coeff,
                                False, True, gx, gw)
        return a0 + a1, b0 + b1
    return _gauss_v_plain(c, uc, sgn, w0, w1, d, cp, cs, logw_coeff,
                          front_left, front_right, gx, gw)


@njit(cache=True)
def _v_halfline(c, uc, sgn, w0, w1, d, cp, cs, gx, gw):
    """Integral over |u| in [w0, w1] on one side of zero (u = sgn*w)."""
    sa = 0.0
    sb = 0.0
    csd = cs * d
    cpd = cp * d
    k2 = 1.0 / (cp * cp) + 1.0 / (cs * cs)
    w1 = min(w1, cpd)
    if w1 <= w0:
        return 0.0, 0.0
    cuts = np.empty(3)
    nc = 0
    cuts[nc] = w0
    nc += 1
    if w0 < csd < w1:
        cuts[nc] = csd
        nc += 1
    cuts[nc] = w1
    nc += 1
    for ic in range(nc - 1):
        a = cuts[ic]
        b = cuts[ic + 1]
        if b - a <= 1e-14 * cpd:
            continue
        two_front = b <= csd
        fr = (b == csd) or (b == cpd)
        fl = (a == csd)
        if two_front and a == 0.0:
            c0 = _shift_to_zero(c, uc, sgn)
            sb += -k2 * _log_int_zero_m(c0, b, 0)
            ga, gb = _gauss_v_interval(c, uc, sgn, a, b, d, cp, cs, 0.0,
                                       False, fr, gx, gw)
            sa += ga
            sb += gb
        else:
            lw = -k2 if two_front else 0.0
            left = a
            while (not fl) and left > 0.0 and b / left > GEO_RATIO * GEO_RATIO:
                nxt = left * GEO_RATIO
                ga, gb = _gauss_v_interval(c, uc, sgn, left, nxt, d, cp, cs,
                                           lw, False, False, gx, gw)
                sa += ga
                sb += gb
                left = nxt
            ga, gb = _gauss_v_interval(c, uc, sgn, left, b, d, cp, cs, lw,
                                       fl, fr, gx, gw)
            sa += ga
            sb += gb
    return sa, sb


@njit(cache=True)
def v_profile_collinear(bounds, centers, coeffs, nprof, dt, cp, cs, gx, gw,
                        out_sa, out_sb):
    """out_sa[q], out_sb[q] = direction / phi-hat integrals of R against
    nu_v at Delta = q*dt, q = 0..nprof-1."""
    for q in range(nprof):
        d = q * dt
        sa = 0.0
        sb = 0.0
        if d > 0.0:
            for p in range(len(centers)):
                u0 = bounds[p, 0]
                u1 = bounds[p, 1]
                if u1 > 0.0:
                    ga, gb = _v_halfline(coeffs[p], centers[p], 1.0,
                                         max(u0, 0.0), u1, d, cp, cs, gx, gw)
                    sa += ga
                    sb += gb
                if u0 < 0.0:
                    ga, gb = _v_halfline(coeffs[p], centers[p], -1.0,
                                         max(-u1, 0.0), -u0, d, cp, cs, gx, gw)
                    sa += ga
                    sb += gb
        out_sa[q] = sa
        out_sb[q] = sb


# ----------------------------------------------------------------------
# collinear hypersingular path


@njit(cache=True, inline="always")
def _nu_w_axis(w, d, cp, cs, rho, comp):
    out = 0.0
    pieces = nu_w_pieces(w, 0.0, d, cp, cs, rho, 0.0, 1.0, 0.0, 1.0)
    if cp * d > w:
        out += pieces[0, comp, comp]
    if cs * d > w:
        out += pieces[1, comp, comp]
    return out


@njit(cache=True, inline="always")
def _nu_w_axis_series(w, amin2, blog, apoly, comp):
    lw = math.log(w)
    v = amin2[comp] / (w * w)
    pw = 1.0
    for k in range(blog.shape[1]):
        v += (blog[comp, k] * lw + apoly[comp, k]) * pw
        pw *= w * w
    return v


@njit(cache=True)
def _gauss_w_plain(c, uc, sgn, w0, w1, d, cp, cs, rho, comp,
                   use_series, amin2, blog, apoly,
                   front_left, front_right, gx, gw):
    s = 0.0
    if front_left or front_right:
        vmax = math.sqrt(w1 - w0)
        for k in range(len(gx)):
            v = vmax * gx[k]
            w = w0 + v * v if front_left else w1 - v * v
            jac = 2.0 * v * vmax
            r = _polyval(c, sgn * w - uc)
            kv = (_nu_w_axis_series(w, amin2, blog, apoly, comp) if use_series
                  else _nu_w_axis(w, d, cp, cs, rho, comp))
            s += gw[k] * jac * r * kv
        return s
    h = w1 - w0
    for k in range(len(gx)):
        w = w0 + h * gx[k]
        r = _polyval(c, sgn * w - uc)
        kv = (_nu_w_axis_series(w, amin2, blog, apoly, comp) if use_series
              else _nu_w_axis(w, d, cp, cs, rho, comp))
        s += gw[k] * h * r * kv
    return s


@njit(cache=True)
def _gauss_w_interval(c, uc, sgn, w0, w1, d, cp, cs, rho, comp,
                      use_series, amin2, blog, apoly,
                      front_left, front_right, gx, gw):
    if front_left and front_right:
        wm = 0.5 * (w0 + w1)
        return (_gauss_w_plain(c, uc, sgn, w0, wm, d, cp, cs, rho, comp,
                               use_series, amin2, blog, apoly,
                               True, False, gx, gw)
                + _gauss_w_plain(c, uc, sgn, wm, w1, d, cp, cs, rho, comp,
                                 use_series, amin2, blog, apoly,
                                 False, True, gx, gw))
    return _gauss_w_plain(c, uc, sgn, w0, w1, d, cp, cs, rho, comp,
                          use_series, amin2, blog, apoly,
                          front_left, front_right, gx, gw)


@njit(cache=True)
def _w_halfline(c, uc, sgn, w0, w1, d, cp, cs, rho, comp,
                amin2, blog, apoly, gx, gw):
    s = 0.0
    csd = cs * d
    cpd = cp * d
    wsw = SERIES_FRACTION * csd
    w1 = min(w1, cpd)
    if w1 <= w0:
        return 0.0
    cuts = np.empty(4)
    nc = 0
    cuts[nc] = w0
    nc += 1
    if w0 < wsw < w1:
        cuts[nc] = wsw
        nc += 1
    if w0 < csd < w1:
        cuts[nc] = csd
        nc += 1
    cuts[nc] = w1
    nc += 1
    for ic in range(nc - 1):
        a = cuts[ic]
        b = cuts[ic + 1]
        if b - a <= 1e-14 * cpd:
            continue
        in_series = b <= wsw
        fr = (b == csd) or (b == cpd)
        fl = (a == csd)
        if in_series and a == 0.0:
            c0 = _shift_to_zero(c, uc, sgn)
            s += amin2[comp] * _fp_int_zero(c0, b)
            for k in range(blog.shape[1]):
                s += blog[comp, k] * _log_int_zero_m(c0, b, 2 * k)
                s += apoly[comp, k] * _mono_int_zero(c0, b, 2 * k)
        else:
            left = a
            while (not fl) and left > 0.0 and b / left > GEO_RATIO * GEO_RATIO:
                nxt = left * GEO_RATIO
                s += _gauss_w_interval(c, uc, sgn, left, nxt, d, cp, cs, rho,
                                       comp, in_series, amin2, blog, apoly,
                                       False, False, gx, gw)
                left = nxt
            s += _gauss_w_interval(c, uc, sgn, left, b, d, cp, cs, rho,
                                   comp, in_series, amin2, blog, apoly,
                                   fl, fr, gx, gw)
    return s


@njit(cache=True)
def w_profile_collinear(bounds, centers, coeffs, nprof, dt, cp, cs, rho,
                        comp, gx, gw, out):
    for q in range(nprof):
        d = q * dt
        s = 0.0
        if d > 0.0:
            amin2, blog, apoly = nu_w_collinear_coeffs(d, cp, cs, rho)
            for p in range(len(centers)):
                u0 = bounds[p, 0]
                u1 = bounds[p, 1]
                if u1 > 0.0:
                    s += _w_halfline(coeffs[p], centers[p], 1.0, max(u0, 0.0),
                                     u1, d, cp, cs, rho, comp,
                                     amin2, blog, apoly, gx, gw)
                if u0 < 0.0:
                    s += _w_halfline(coeffs[p], centers[p], -1.0,
                                     max(-u1, 0.0), -u0, d, cp, cs, rho, comp,
                                     amin2, blog, apoly, gx, gw)
        out[q] = s


# ----------------------------------------------------------------------
# general 2D pairs (polygon cross-side integration)


@njit(cache=True, inline="always")
def _nu_v_2d(rx, ry, d, cp, cs, sub_log):
    """nu_v components (11, 22, 12) at r = (rx, ry); if sub_log, the
    -K2/2*log(r) delta-term is removed in the two-front region."""
    r2 = rx * rx + ry * ry
    r = math.sqrt(r2)
    if r >= cp * d:
        return 0.0, 0.0, 0.0
    ex2 = rx * rx / r2
    ey2 = ry * ry / r2
    exy = rx * ry / r2
    if r < cs * d:
        phip = math.sqrt(cp * cp * d * d - r2)
        phis = math.sqrt(cs * cs * d * d - r2)
        dirf = d * (cp * cp - cs * cs) / (cp * cs * (cs * phip + cp * phis))
        bh = 0.5 * (math.log(cp * d + phip) / (cp * cp)
                    + math.log(cs * d + phis) / (cs * cs))
        if not sub_log:
            bh -= 0.5 * (1.0 / (cp * cp) + 1.0 / (cs * cs)) * math.log(r)
    else:
        phip = math.sqrt(cp * cp * d * d - r2)
        dirf = d * phip / (cp * r2)
        bh = 0.5 * (math.log(cp * d + phip) - math.log(r)) / (cp * cp)
    return (ex2 - 0.5) * dirf + bh, (ey2 - 0.5) * dirf + bh, exy * dirf


@njit(cache=True)
def _seg_circle_params(px, py, ax, ay, tx, ty, L, rad, buf, n0):
    """Append s in (0, L) with |a + s*t - p| = rad to buf (unit t)."""
    dx = ax - px
    dy = ay - py
    bq = dx * tx + dy * ty
    cq = dx * dx + dy * dy - rad * rad
    disc = bq * bq - cq
    n = n0
    if disc > 0.0:
        sq = math.sqrt(disc)
        for s in (-bq - sq, -bq + sq):
            if 1e-14 * L < s < L * (1.0 - 1e-14):
                buf[n] = s
                n += 1
    return n


@njit(cache=True)
def _log_seg_exact(px, py, ax, ay, tx, ty, s0, s1):
    """Exact int_{s0}^{s1} log|a + s*t - p| ds for unit direction t."""
    dx = ax - px
    dy = ay - py
    sf = -(dx * tx + dy * ty)
    hx = dx + sf * tx
    hy = dy + sf * ty
    h2 = hx * hx + hy * hy
    out = 0.0
    for idx in range(2):
        sgn = -1.0 if idx == 0 else 1.0
        s = s0 if idx == 0 else s1
        v = s - sf
        r2 = v * v + h2
        term = 0.5 * v * math.log(r2) - v
        if h2 > 0.0:
            term += math.sqrt(h2) * math.atan2(v, math.sqrt(h2))
        out += sgn * term
    return out


@njit(cache=True)
def _graded_bounds(a, b, toward_left, dnear, max_sub):
    """Dyadic subdivision bounds of [a,b] graded toward one endpoint until
    the smallest cell is comparable to the distance dnear."""
    span = b - a
    nsub = 1
    if 0.0 <= dnear < span:
        ratio = span / max(dnear, 1e-9 * span)
        nsub = min(1 + int(math.log(ratio) / math.log(2.0)) + 1, max_sub)
    pts = np.empty(nsub + 1)
    pts[0] = a
    pts[nsub] = b
    for k in range(1, nsub):
        if toward_left:
            pts[k] = a + span * 2.0 ** (-(nsub - k))
        else:
            pts[k] = b - span * 2.0 ** (-k)
    return pts


@njit(cache=True)
def _inner_integral_2d(px, py, ax, ay, tx, ty, L, d, cp, cs, shape_c, gx, gw):
    """Inner integral of nu_v(x - xi(s)) * shape(s/L) over s in [0, L]."""
    buf = np.empty(6)
    n = 0
    buf[n] = 0.0
    n += 1
    n = _seg_circle_params(px, py, ax, ay, tx, ty, L, cs * d, buf, n)
    n = _seg_circle_params(px, py, ax, ay, tx, ty, L, cp * d, buf, n)
    buf[n] = L
    n += 1
    cuts = np.sort(buf[:n])
    i11 = 0.0
    i22 = 0.0
    i12 = 0.0
    k2h = 0.5 * (1.0 / (cp * cp) + 1.0 / (cs * cs))
    const_shape = len(shape_c) == 1
    for ic in range(len(cuts) - 1):
        a = cuts[ic]
        b = cuts[ic + 1]
        if b - a < 1e-15:
            continue
        sm = 0.5 * (a + b)
        rmx = px - (ax + sm * tx)
        rmy = py - (ay + sm * ty)
        rm = math.sqrt(rmx * rmx + rmy * rmy)
        if rm >= cp * d:
            continue
        two_front = rm < cs * d
        sub_log = two_front and const_shape
        da = math.hypot(px - (ax + a * tx), py - (ay + a * ty))
        db = math.hypot(px - (ax + b * tx), py - (ay + b * ty))
        pts = _graded_bounds(a, b, da <= db, min(da, db), 22)
        for isub in range(len(pts) - 1):
            aa = pts[isub]
            bb = pts[isub + 1]
            h = bb - aa
            for k in range(len(gx)):
                s = aa + h * gx[k]
                rx = px - (ax + s * tx)
                ry = py - (ay + s * ty)
                o11, o22, o12 = _nu_v_2d(rx, ry, d, cp, cs, sub_log)
                sv = shape_c[0] if const_shape else _polyval(shape_c, s / L)
                i11 += gw[k] * h * sv * o11
                i22 += gw[k] * h * sv * o22
                i12 += gw[k] * h * sv * o12
        if sub_log:
            lg = -k2h * shape_c[0] * _log_seg_exact(px, py, ax, ay, tx, ty, a, b)
            i11 += lg
            i22 += lg
    return i11, i22, i12


@njit(cache=True, inline="always")
def _pt_seg_dist(px, py, ax, ay, bx, by):
    tx = bx - ax
    ty = by - ay
    L2 = tx * tx + ty * ty
    t = ((px - ax) * tx + (py - ay) * ty) / L2
    t = min(max(t, 0.0), 1.0)
    return math.hypot(px - (ax + t * tx), py - (ay + t * ty))


@njit(cache=True)
def pair_profile_2d(ax1, ay1, bx1, by1, ax2, ay2, bx2, by2,
                    shape1, shape2, nprof, dt, cp, cs, gx, gw,
                    out11, out22, out12):
    """General-pair profiles I_ij(q*dt) by outer Gauss x inner splitting."""
    t1x = bx1 - ax1
    t1y = by1 - ay1
    L1 = math.hypot(t1x, t1y)
    t1x /= L1
    t1y /= L1
    t2x = bx2 - ax2
    t2y = by2 - ay2
    L2 = math.hypot(t2x, t2y)
    t2x /= L2
    t2y /= L2
    dmin = min(min(_pt_seg_dist(ax1, ay1, ax2, ay2, bx2, by2),
                   _pt_seg_dist(bx1, by1, ax2, ay2, bx2, by2)),
               min(_pt_seg_dist(ax2, ay2, ax1, ay1, bx1, by1),
                   _pt_seg_dist(bx2, by2, ax1, ay1, bx1, by1)))
    const1 = len(shape1) == 1
    buf = np.empty(12)
    for q in range(nprof):
        d = q * dt
        if d <= 0.0 or cp * d <= dmin:
            out11[q] = 0.0
            out22[q] = 0.0
            out12[q] = 0.0
            continue
        n = 0
        buf[n] = 0.0
        n += 1
        for iq in range(2):
            qx = ax2 if iq == 0 else bx2
            qy = ay2 if iq == 0 else by2
            n = _seg_circle_params(qx, qy, ax1, ay1, t1x, t1y, L1, cs * d, buf, n)
            n = _seg_circle_params(qx, qy, ax1, ay1, t1x, t1y, L1, cp * d, buf, n)
        buf[n] = L1
        n += 1
        cuts = np.sort(buf[:n])
        s11 = 0.0
        s22 = 0.0
        s12 = 0.0
        for ic in range(len(cuts) - 1):
            a = cuts[ic]
            b = cuts[ic + 1]
            if b - a < 1e-15:
                continue
            da = _pt_seg_dist(ax1 + a * t1x, ay1 + a * t1y, ax2, ay2, bx2, by2)
            db = _pt_seg_dist(ax1 + b * t1x, ay1 + b * t1y, ax2, ay2, bx2, by2)
            pts = _graded_bounds(a, b, da <= db, min(da, db), 26)
            for isub in range(len(pts) - 1):
                aa = pts[isub]
                bb = pts[isub + 1]
                h = bb - aa
                for k in range(len(gx)):
                    s = aa + h * gx[k]
                    px = ax1 + s * t1x
                    py = ay1 + s * t1y
                    wv = shape1[0] if const1 else _polyval(shape1, s / L1)
                    i11, i22, i12 = _inner_integral_2d(
                        px, py, ax2, ay2, t2x, t2y, L2, d, cp, cs,
                        shape2, gx, gw)
                    s11 += gw[k] * h * wv * i11
                    s22 += gw[k] * h * wv * i22
                    s12 += gw[k] * h * wv * i12
        out11[q] = s11
        out22[q] = s22
        out12[q] = s12


# ----------------------------------------------------------------------
# spec-level wrappers


def split_at_wavefronts(inner_element, field_point, delta, material):
    """Partition of the inner element by the wavefront circles around the
    field point: list of ((s0, s1), regime), s in [0,1] local coordinates,
    regime in {"none", "P", "S+P"}."""
    a = np.asarray(inner_element[0], dtype=float)
    b = np.asarray(inner_element[1], dtype=float)
    p = np.asarray(field_point, dtype=float)
    t = b - a
    L = float(np.hypot(*t))
    t = t / L
    buf = np.empty(6)
    n = 0
    n = _seg_circle_params(p[0], p[1], a[0], a[1], t[0], t[1], L,
                           material.c_s * delta, buf, n)
    n = _seg_circle_params(p[0], p[1], a[0], a[1], t[0], t[1], L,
                           material.c_p * delta, buf, n)
    cuts = np.concatenate([[0.0], np.sort(buf[:n]), [L]])
    pieces = []
    for s0, s1 in zip(cuts[:-1], cuts[1:]):
        if s1 - s0 < 1e-15:
            continue
        sm = 0.5 * (s0 + s1)
        r = float(np.hypot(*(a + sm * t - p)))
        if r < material.c_s * delta:
            regime = "S+P"
        elif r < material.c_p * delta:
            regime = "P"
        else:
            regime = "none"
        pieces.append(((s0 / L, s1 / L), regime))
    return pieces


def _collinear_frame(outer, inner):
    """If both flat elements lie on one straight line, return
    (tau, (0, L1), (pa2, pb2)) with scalar coordinates along the line
    (inner projections keep the element's own orientation); else None."""
    a1 = np.asarray(outer[0], float)
    b1 = np.asarray(outer[1], float)
    a2 = np.asarray(inner[0], float)
    b2 = np.asarray(inner[1], float)
    t = b1 - a1
    L = float(np.hypot(*t))
    tau = t / L
    nrm = np.array([-tau[1], tau[0]])
    for p in (a2, b2):
        if abs(float(np.dot(p - a1, nrm))) > 1e-12 * max(1.0, L):
            return None
    proj = lambda p: float(np.dot(p - a1, tau))
    return tau, (0.0, L), (proj(a2), proj(b2))


def _line_shape(coeffs, a, b):
    """Shape polynomial about the element midpoint, local s = (x-a)/(b-a)
    with z = x - (a+b)/2."""
    p = np.polynomial.Polynomial(np.asarray(coeffs, float))(
        np.polynomial.Polynomial([0.5, 1.0 / (b - a)]))
    return p.coef


def _pair_correlation(frame, f_loc, g_loc):
    tau, (pa1, pb1), (pa2, pb2) = frame
    f_line = _line_shape(f_loc, pa1, pb1)
    g_line = _line_shape(g_loc, pa2, pb2)
    lo2, hi2 = min(pa2, pb2), max(pa2, pb2)
    return correlation_pieces(pa1, pb1, f_line, lo2, hi2, g_line,
                              f_about=0.5 * (pa1 + pb1),
                              g_about=0.5 * (pa2 + pb2))


def integrate_pair_v(outer_element, inner_element, shape_pair, delta, material,
                     tol: float = 1e-10):
    """Galerkin integral of nu_v over an element pair; 2x2 array over (i,j).

    shape_pair: (outer_coeffs, inner_coeffs), ascending polynomials in the
    local coordinate of each element.
    """
    if delta <= 0.0:
        return np.zeros((2, 2))
    cp, cs = material.c_p, material.c_s
    f_loc = np.asarray(shape_pair[0], float)
    g_loc = np.asarray(shape_pair[1], float)
    frame = _collinear_frame(outer_element, inner_element)
    if frame is not None:
        tau = frame[0]
        bounds, centers, coeffs = _pair_correlation(frame, f_loc, g_loc)
        sa = np.empty(2)
        sb = np.empty(2)
        v_profile_collinear(bounds, centers, coeffs, 2, delta, cp, cs,
                            _GX, _GW, sa, sb)
        out = np.empty((2, 2))
        for i in range(2):
            for j in range(2):
                out[i, j] = (tau[i] * tau[j] - 0.5 * (i == j)) * sa[1] \
                    + 0.5 * (i == j) * sb[1]
        return out
    o11 = np.empty(2)
    o22 = np.empty(2)
    o12 = np.empty(2)
    (a1, b1), (a2, b2) = outer_element, inner_element
    pair_profile_2d(a1[0], a1[1], b1[0], b1[1], a2[0], a2[1], b2[0], b2[1],
                    f_loc, g_loc, 2, delta, cp, cs, _GX, _GW, o11, o22, o12)
    return np.array([[o11[1], o12[1]], [o12[1], o22[1]]])


def integrate_pair_w(outer_element, inner_element, shape_pair, delta, material,
                     tol: float = 1e-10):
    """Galerkin integral of nu_w for a collinear pair (normals n_x = n_xi
    perpendicular to the common line); 2x2 array, diagonal in the frame
    aligned with the crack (off-diagonal vanishes on the axis)."""
    if delta <= 0.0:
        return np.zeros((2, 2))
    frame = _collinear_frame(outer_element, inner_element)
    if frame is None:
        raise NotImplementedError("hypersingular pairs must be collinear")
    bounds, centers, coeffs = _pair_correlation(
        frame, np.asarray(shape_pair[0], float), np.asarray(shape_pair[1], float))
    out = np.zeros((2, 2))
    prof = np.empty(2)
    for comp in range(2):
        w_profile_collinear(bounds, centers, coeffs, 2, delta,
                            material.c_p, material.c_s, material.rho,
                            comp, _GX, _GW, prof)
        out[comp, comp] = prof[1]
    return out
