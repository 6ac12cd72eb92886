"""Assembly of the space-time Galerkin systems and right-hand sides.

The Galerkin matrix is block lower-triangular Toeplitz in time: block ell
depends only on the lag ell = n_test - n_trial.  Each entry combines the
per-pair kernel time profile

    I(q*dt) = integral of (test shape x trial shape) against the kernel
              at time difference q*dt

through the alternating-sign sum over the four (xi, sigma) translates,
which collapses to the second difference 2I(ell) - I(ell+1) - I(ell-1)
(terms at non-positive time difference vanish).  Profiles are computed
once per element/shape pair for q = 0..N and reused across all lags.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numba import njit, prange

from .basis import BasisSpace, lagrange_coeffs
from .core_model import Material, TimeGrid
from .quadrature import (_GX, _GW, correlation_pieces, gauss_legendre,
                         pair_profile_2d, v_profile_collinear,
                         w_profile_collinear)


@dataclass(frozen=True)
class ToeplitzBlockSystem:
    blocks: np.ndarray  # (N, 2M, 2M), component-blocked [[E11,E12],[E21,E22]]
    unknown_kind: str  # "dirichlet_traction" | "neumann_displacement"
    space: BasisSpace
    time: TimeGrid


@dataclass(frozen=True)
class RhsHistory:
    vectors: np.ndarray  # (N, 2M)


@dataclass(frozen=True)
class BoundaryDatum:
    """Space-time boundary datum, either separable f(t)*s(x) or general.

    space_part: x (2,) -> (2,); time_part: t -> float; full: (x, t) -> (2,).
    """
    space_part: Optional[Callable] = None
    time_part: Optional[Callable] = None
    full: Optional[Callable] = None

    def __post_init__(self):
        if self.full is None and (self.space_part is None or self.time_part is None):
            raise ValueError("datum needs either full or space_part+time_part")

    def __call__(self, x, t):
        if self.full is not None:
            return np.asarray(self.full(x, t), dtype=float)
        return self.time_part(t) * np.asarray(self.space_part(x), dtype=float)


# ----------------------------------------------------------------------
# element-pair bookkeeping


def _side_groups(mesh) -> np.ndarray:
    """Straight-line group index per element (elements in one group are
    collinear with consistent orientation)."""
    if mesh.side_of_element is not None:
        return np.asarray(mesh.side_of_element, dtype=np.int64)
    n = mesh.n_elements
    out = np.full(n, -1, dtype=np.int64)
    reps = []  # (point, unit direction)
    for e in range(n):
        a, b = mesh.element_endpoints(e)
        t = (b - a) / np.hypot(*(b - a))
        for gi, (p0, t0) in enumerate(reps):
            off = a - p0
            if (abs(t[0] * t0[1] - t[1] * t0[0]) < 1e-12
                    and abs(off[0] * t0[1] - off[1] * t0[0]) < 1e-12):
                out[e] = gi
                break
        else:
            out[e] = len(reps)
            reps.append((a.copy(), t))
    return out


def _side_frames(mesh, groups):
    """Per group: (origin, unit tangent); per element: scalar interval
    (xa, xb) along its group line, in element orientation."""
    frames = {}
    intervals = np.empty((mesh.n_elements, 2))
    for e in range(mesh.n_elements):
        a, b = mesh.element_endpoints(e)
        g = groups[e]
        if g not in frames:
            t = (b - a) / np.hypot(*(b - a))
            frames[g] = (a.copy(), t)
        p0, t = frames[g]
        intervals[e, 0] = float(np.dot(a - p0, t))
        intervals[e, 1] = float(np.dot(b - p0, t))
    return frames, intervals


def _line_shapes(space, intervals):
    """Shape polynomials per (element, local node) in the group line
    coordinate, expanded about the element midpoint to stay well
    conditioned on strongly graded meshes.

    Returns (shapes, mids): shapes[e][i] are ascending coefficients in
    z = x - mids[e].
    """
    out = []
    mids = np.empty(space.mesh.n_elements)
    for e in range(space.mesh.n_elements):
        p = int(space.degrees[e])
        xa, xb = intervals[e]
        mids[e] = 0.5 * (xa + xb)
        shifted = []
        comp = np.polynomial.Polynomial([0.5, 1.0 / (xb - xa)])
        for c in lagrange_coeffs(p):
            shifted.append(np.polynomial.Polynomial(c)(comp).coef)
        out.append(shifted)
    return out, mids


# ----------------------------------------------------------------------
# numba profile drivers


@njit(parallel=True, cache=True)
def _profiles_collinear_v(po, pc, bounds, centers, coeffs, nprof, dt, cp, cs,
                          gx, gw):
    nt = len(po)
    sa = np.zeros((nt, nprof))
    sb = np.zeros((nt, nprof))
    for t in prange(nt):
        o = po[t]
        c = pc[t]
        v_profile_collinear(bounds[o:o + c], centers[o:o + c],
                            coeffs[o:o + c], nprof, dt, cp, cs, gx, gw,
                            sa[t], sb[t])
    return sa, sb


@njit(parallel=True, cache=True)
def _profiles_collinear_w(po, pc, bounds, centers, coeffs, nprof, dt, cp, cs,
                          rho, gx, gw):
    nt = len(po)
    st = np.zeros((nt, nprof))
    sn = np.zeros((nt, nprof))
    for t in prange(nt):
        o = po[t]
        c = pc[t]
        w_profile_collinear(bounds[o:o + c], centers[o:o + c],
                            coeffs[o:o + c], nprof, dt, cp, cs, rho, 0,
                            gx, gw, st[t])
        w_profile_collinear(bounds[o:o + c], centers[o:o + c],
                            coeffs[o:o + c], nprof, dt, cp, cs, rho, 1,
                            gx, gw, sn[t])
    return st, sn


@njit(parallel=True, cache=True)
def _profiles_general_v(geom, shp, soff, slen, toff, tlen, nprof, dt, cp, cs,
                        gx, gw):
    nt = geom.shape[0]
    o11 = np.zeros((nt, nprof))
    o22 = np.zeros((nt, nprof))
    o12 = np.zeros((nt, nprof))
    for t in prange(nt):
        pair_profile_2d(geom[t, 0], geom[t, 1], geom[t, 2], geom[t, 3],
                        geom[t, 4], geom[t, 5], geom[t, 6], geom[t, 7],
                        shp[soff[t]:soff[t] + slen[t]],
                        shp[toff[t]:toff[t] + tlen[t]],
                        nprof, dt, cp, cs, gx, gw, o11[t], o22[t], o12[t])
    return o11, o22, o12


# ----------------------------------------------------------------------
# block assembly


def _second_difference(prof, n_blocks):
    """comb[:, ell] = 2 I(ell) - I(ell+1) - I(ell-1), I(<=0) := 0."""
    comb = 2.0 * prof[:, :n_blocks] - prof[:, 1:n_blocks + 1]
    comb[:, 1:] -= prof[:, :n_blocks - 1]
    return comb


def _collect_collinear_tasks(space, e_pairs, intervals, shapes, mids):
    dof_map = space.dof_map
    rows, cols = [], []
    po, pc = [], []
    all_bounds, all_centers, all_coeffs = [], [], []
    n_pieces = 0
    for e1, e2 in e_pairs:
        xa1, xb1 = intervals[e1]
        lo1, hi1 = min(xa1, xb1), max(xa1, xb1)
        xa2, xb2 = intervals[e2]
        lo2, hi2 = min(xa2, xb2), max(xa2, xb2)
        for ia, A in enumerate(dof_map[e1]):
            if A < 0:
                continue
            for ib, B in enumerate(dof_map[e2]):
                if B < 0:
                    continue
                bso, cso, coo = correlation_pieces(
                    lo1, hi1, shapes[e1][ia], lo2, hi2, shapes[e2][ib],
                    f_about=mids[e1], g_about=mids[e2])
                rows.append(A)
                cols.append(B)
                po.append(n_pieces)
                pc.append(len(cso))
                n_pieces += len(cso)
                all_bounds.append(bso)
                all_centers.append(cso)
                all_coeffs.append(coo)
    if not rows:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, z, np.zeros((0, 2)), np.zeros(0), np.zeros((0, 1))
    width = max(c.shape[1] for c in all_coeffs)
    coeffs = np.zeros((n_pieces, width))
    k = 0
    for c in all_coeffs:
        coeffs[k:k + len(c), :c.shape[1]] = c
        k += len(c)
    return (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
            np.array(po, dtype=np.int64), np.array(pc, dtype=np.int64),
            np.concatenate(all_bounds), np.concatenate(all_centers), coeffs)


def _collect_general_tasks(space, e_pairs):
    mesh = space.mesh
    dof_map = space.dof_map
    rows, cols, geom = [], [], []
    soff, slen, toff, tlen = [], [], [], []
    shp_flat = []
    n = 0
    for e1, e2 in e_pairs:
        a1, b1 = mesh.element_endpoints(e1)
        a2, b2 = mesh.element_endpoints(e2)
        sh1 = lagrange_coeffs(int(space.degrees[e1]))
        sh2 = lagrange_coeffs(int(space.degrees[e2]))
        for ia, A in enumerate(dof_map[e1]):
            if A < 0:
                continue
            for ib, B in enumerate(dof_map[e2]):
                if B < 0:
                    continue
                rows.append(A)
                cols.append(B)
                geom.append([a1[0], a1[1], b1[0], b1[1],
                             a2[0], a2[1], b2[0], b2[1]])
                soff.append(n)
                slen.append(len(sh1[ia]))
                shp_flat.extend(sh1[ia])
                n += len(sh1[ia])
                toff.append(n)
                tlen.append(len(sh2[ib]))
                shp_flat.extend(sh2[ib])
                n += len(sh2[ib])
    return (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
            np.array(geom, dtype=float).reshape(-1, 8),
            np.array(shp_flat, dtype=float),
            np.array(soff, dtype=np.int64), np.array(slen, dtype=np.int64),
            np.array(toff, dtype=np.int64), np.array(tlen, dtype=np.int64))


def _scatter(blocks, i, j, M, rows, cols, comb):
    np.add.at(blocks, (slice(None), i * M + rows, j * M + cols), comb.T)


def _build_blocks_v(space, n_blocks, dt, material):
    mesh = space.mesh
    M = space.dof_count
    nprof = n_blocks + 1
    groups = _side_groups(mesh)
    frames, intervals = _side_frames(mesh, groups)
    shapes, mids = _line_shapes(space, intervals)
    n_el = mesh.n_elements
    coll = [(e1, e2) for e1 in range(n_el) for e2 in range(n_el)
            if groups[e1] == groups[e2]]
    gen = [(e1, e2) for e1 in range(n_el) for e2 in range(n_el)
           if groups[e1] != groups[e2]]
    blocks = np.zeros((n_blocks, 2 * M, 2 * M))
    if coll:
        rows, cols, po, pc, bnd, cen, cof = _collect_collinear_tasks(
            space, coll, intervals, shapes, mids)
        sa, sb = _profiles_collinear_v(po, pc, bnd, cen, cof, nprof, dt,
                                       material.c_p, material.c_s, _GX, _GW)
        ca = _second_difference(sa, n_blocks)
        cb = _second_difference(sb, n_blocks)
        t_per_task = []
        for e1, e2 in coll:
            npair = sum(1 for A in space.dof_map[e1] if A >= 0) * \
                sum(1 for B in space.dof_map[e2] if B >= 0)
            t_per_task.extend([frames[groups[e1]][1]] * npair)
        tt = np.array(t_per_task)
        for i in range(2):
            for j in range(2):
                coef = (tt[:, i] * tt[:, j] - 0.5 * (i == j))[:, None] * ca \
                    + (0.5 * (i == j)) * cb
                _scatter(blocks, i, j, M, rows, cols, coef)
    if gen:
        rows, cols, geom, shp, soff, slen, toff, tlen = \
            _collect_general_tasks(space, gen)
        o11, o22, o12 = _profiles_general_v(geom, shp, soff, slen, toff, tlen,
                                            nprof, dt, material.c_p,
                                            material.c_s, _GX, _GW)
        c11 = _second_difference(o11, n_blocks)
        c22 = _second_difference(o22, n_blocks)
        c12 = _second_difference(o12, n_blocks)
        _scatter(blocks, 0, 0, M, rows, cols, c11)
        _scatter(blocks, 1, 1, M, rows, cols, c22)
        _scatter(blocks, 0, 1, M, rows, cols, c12)
        _scatter(blocks, 1, 0, M, rows, cols, c12)
    blocks *= -1.0 / (2.0 * np.pi * material.rho)
    return blocks


def _build_blocks_w(space, n_blocks, dt, material):
    mesh = space.mesh
    M = space.dof_count
    nprof = n_blocks + 1
    groups = _side_groups(mesh)
    frames, intervals = _side_frames(mesh, groups)
    shapes, mids = _line_shapes(space, intervals)
    n_el = mesh.n_elements
    coll = [(e1, e2) for e1 in range(n_el) for e2 in range(n_el)
            if groups[e1] == groups[e2]]
    if len(coll) != n_el * n_el:
        raise NotImplementedError(
            "hypersingular assembly supports straight-line boundaries only")
    rows, cols, po, pc, bnd, cen, cof = _collect_collinear_tasks(
        space, coll, intervals, shapes, mids)
    st, sn = _profiles_collinear_w(po, pc, bnd, cen, cof, nprof, dt,
                                   material.c_p, material.c_s, material.rho,
                                   _GX, _GW)
    ct = _second_difference(st, n_blocks)
    cn = _second_difference(sn, n_blocks)
    t_per_task = []
    for e1, e2 in coll:
        npair = sum(1 for A in space.dof_map[e1] if A >= 0) * \
            sum(1 for B in space.dof_map[e2] if B >= 0)
        t_per_task.extend([frames[groups[e1]][1]] * npair)
    tt = np.array(t_per_task)
    nr = np.stack([-tt[:, 1], tt[:, 0]], axis=1)
    blocks = np.zeros((n_blocks, 2 * M, 2 * M))
    for i in range(2):
        for j in range(2):
            coef = (tt[:, i] * tt[:, j])[:, None] * ct \
                + (nr[:, i] * nr[:, j])[:, None] * cn
            _scatter(blocks, i, j, M, rows, cols, coef)
    # Sign fixed by the static limit of the Neumann problem on a flat arc:
    # the long-time solution must reproduce -cp^2/(rho cs^2 (cp^2-cs^2)) * eta
    # * sqrt(1/4 - x^2), and the starting block must be positive definite.
    blocks *= 1.0 / (2.0 * np.pi * material.rho * dt * dt)
    return blocks


def build_system_v(space: BasisSpace, time: TimeGrid, material: Material,
                   tol: float = 1e-10) -> ToeplitzBlockSystem:
    """Assemble all single-layer blocks E_V^(0..N-1)."""
    blocks = _build_blocks_v(space, time.n_steps, time.dt, material)
    return ToeplitzBlockSystem(blocks, "dirichlet_traction", space, time)


def build_system_w(space: BasisSpace, time: TimeGrid, material: Material,
                   tol: float = 1e-10) -> ToeplitzBlockSystem:
    """Assemble all hypersingular blocks E_W^(0..N-1)."""
    blocks = _build_blocks_w(space, time.n_steps, time.dt, material)
    return ToeplitzBlockSystem(blocks, "neumann_displacement", space, time)


def assemble_block_v(space: BasisSpace, time: TimeGrid, material: Material,
                     lag: int, tol: float = 1e-10) -> np.ndarray:
    if not (0 <= lag < time.n_steps):
        raise ValueError("lag out of range")
    return _build_blocks_v(space, lag + 1, time.dt, material)[lag]


def assemble_block_w(space: BasisSpace, time: TimeGrid, material: Material,
                     lag: int, tol: float = 1e-10) -> np.ndarray:
    if not (0 <= lag < time.n_steps):
        raise ValueError("lag out of range")
    if space.continuity == "discontinuous":
        raise ValueError("hypersingular system needs a continuous space")
    return _build_blocks_w(space, lag + 1, time.dt, material)[lag]


# ----------------------------------------------------------------------
# right-hand sides

_GX16, _GW16 = gauss_legendre(16)
_GX12T, _GW12T = gauss_legendre(12)


def space_moments(space: BasisSpace, fx: Callable) -> np.ndarray:
    """(2M,) vector of integrals shape_m(x) * f_i(x) dGamma, split where
    x_1 changes sign along an element (kinked data like |x_1|^a)."""
    mesh = space.mesh
    M = space.dof_count
    out = np.zeros(2 * M)
    for e in range(mesh.n_elements):
        a, b = mesh.element_endpoints(e)
        L = float(np.hypot(*(b - a)))
        p = int(space.degrees[e])
        shp = lagrange_coeffs(p)
        breaks = [0.0, 1.0]
        if abs(b[0] - a[0]) > 0 and a[0] * b[0] < 0:
            breaks.insert(1, -a[0] / (b[0] - a[0]))
        for s0, s1 in zip(breaks[:-1], breaks[1:]):
            ss = s0 + (s1 - s0) * _GX16
            xs = a[None, :] + ss[:, None] * (b - a)[None, :]
            vals = np.array([fx(x) for x in xs])  # (ng, 2)
            wj = _GW16 * (s1 - s0) * L
            for k, g in enumerate(space.dof_map[e]):
                if g < 0:
                    continue
                wk = np.polynomial.polynomial.polyval(ss, shp[k])
                for i in range(2):
                    out[i * M + g] += float(np.sum(wj * wk * vals[:, i]))
    return out


def assemble_rhs_dirichlet(space: BasisSpace, time: TimeGrid,
                           datum: BoundaryDatum) -> RhsHistory:
    """Entries integrate the time derivative of the datum against the
    constant-in-time test indicator: moment of g(., t_{n+1}) - g(., t_n)."""
    N = time.n_steps
    M = space.dof_count
    vecs = np.zeros((N, 2 * M))
    if datum.full is None:
        mom = space_moments(space, datum.space_part)
        f = np.array([datum.time_part(time.t(n)) for n in range(N + 1)])
        vecs[:] = (f[1:] - f[:-1])[:, None] * mom[None, :]
    else:
        moms = [space_moments(space, lambda x, tn=time.t(n): datum(x, tn))
                for n in range(N + 1)]
        for n in range(N):
            vecs[n] = moms[n + 1] - moms[n]
    return RhsHistory(vecs)


def assemble_rhs_neumann(space: BasisSpace, time: TimeGrid,
                         datum: BoundaryDatum) -> RhsHistory:
    """Entries are minus the slab average of the datum moment,
    -(1/dt) * int_{t_n}^{t_{n+1}} moment(h(., t)) dt (the hat-test form
    integrated by parts in time; a constant-in-time datum contributes
    -moment on every step)."""
    N = time.n_steps
    M = space.dof_count
    dt = time.dt
    vecs = np.zeros((N, 2 * M))
    if datum.full is None:
        mom = space_moments(space, datum.space_part)
        for n in range(N):
            ts = time.t(n) + dt * _GX12T
            favg = float(np.sum(_GW12T * np.array([datum.time_part(t)
                                                   for t in ts])))
            vecs[n] = -favg * mom
    else:
        for n in range(N):
            ts = time.t(n) + dt * _GX12T
            acc = np.zeros(2 * M)
            for t, w in zip(ts, _GW12T):
                acc += w * space_moments(space, lambda x, tt=t: datum(x, tt))
            vecs[n] = -acc
    return RhsHistory(vecs)


# ----------------------------------------------------------------------
# binary block cache

_MAGIC = b"EBEM"
_VERSION = 1


def save_blocks(path: str, system: ToeplitzBlockSystem) -> None:
    """Little-endian cache: magic 'EBEM', uint32 version, uint32 M (spatial
    dof count per component), uint32 N (number of lags), then the 2Mx2M
    float64 blocks row-major in lag order."""
    M = system.space.dof_count
    N = len(system.blocks)
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<III", _VERSION, M, N))
        f.write(np.ascontiguousarray(system.blocks, dtype="<f8").tobytes())


def load_blocks(path: str) -> tuple[np.ndarray, int, int]:
    """Read a block cache; returns (blocks (N, 2M, 2M), M, N)."""
    with open(path, "rb") as f:
        if f.read(4) != _MAGIC:
            raise ValueError("bad magic in block cache")
        version, M, N = struct.unpack("<III", f.read(12))
        if version != _VERSION:
            raise ValueError(f"unsupported cache version {version}")
        data = np.frombuffer(f.read(), dtype="<f8")
    if data.size != N * 4 * M * M:
        raise ValueError("truncated block cache")
    return data.reshape(N, 2 * M, 2 * M).copy(), M, N
