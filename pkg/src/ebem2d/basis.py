"""Discrete spaces in space and time.

Space: piecewise Lagrange polynomials on the boundary mesh with equispaced
nodes per element, either discontinuous, continuous, or continuous with
vanishing values at the endpoints of an open arc (conforming for the
hypersingular operator).  Time: piecewise constants or hat functions
vanishing at t=0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_model import BoundaryMesh, TimeGrid

CONTINUITIES = ("discontinuous", "continuous", "continuous_vanishing_at_tips")


def lagrange_coeffs(p: int) -> np.ndarray:
    """Coefficients (ascending, shape (p+1, p+1)) of the Lagrange basis on
    equispaced nodes j/p of [0,1]; row k is the k-th node function."""
    if p == 0:
        return np.ones((1, 1))
    nodes = np.arange(p + 1) / p
    out = np.empty((p + 1, p + 1))
    for k in range(p + 1):
        poly = np.polynomial.Polynomial([1.0])
        for j in range(p + 1):
            if j != k:
                poly *= np.polynomial.Polynomial([-nodes[j], 1.0]) / (nodes[k] - nodes[j])
        c = poly.coef
        out[k, : len(c)] = c
        out[k, len(c):] = 0.0
    return out


@dataclass(frozen=True)
class BasisSpace:
    mesh: BoundaryMesh
    degrees: np.ndarray  # per-element polynomial degree
    continuity: str
    dof_count: int  # per scalar component
    dof_map: list  # dof_map[e][k] = global index of local node k, or -1


def build_space(mesh: BoundaryMesh, degree_spec, continuity: str) -> BasisSpace:
    if continuity not in CONTINUITIES:
        raise ValueError(f"unknown continuity {continuity!r}")
    n_el = mesh.n_elements
    degrees = np.asarray(
        np.broadcast_to(np.asarray(degree_spec, dtype=np.int64), (n_el,))
    ).copy()
    if (degrees < 0).any():
        raise ValueError("degrees must be >= 0")
    if continuity != "discontinuous" and (degrees < 1).any():
        raise ValueError("continuous spaces need degree >= 1")
    closed = mesh.topology == "closed"
    if continuity == "continuous_vanishing_at_tips" and closed:
        raise ValueError("tip constraints only apply to open arcs")

    dof_map: list[list[int]] = []
    if continuity == "discontinuous":
        nxt = 0
        for e in range(n_el):
            p = degrees[e]
            dof_map.append(list(range(nxt, nxt + p + 1)))
            nxt += p + 1
        count = nxt
    else:
        nxt = 0
        prev_last = None
        for e in range(n_el):
            p = degrees[e]
            loc = []
            for k in range(p + 1):
                if k == 0 and prev_last is not None:
                    loc.append(prev_last)
                else:
                    loc.append(nxt)
                    nxt += 1
            prev_last = loc[-1]
            dof_map.append(loc)
        if closed:
            # identify last node with the first
            last = dof_map[-1][-1]
            dof_map[-1][-1] = dof_map[0][0]
            nxt -= 1
            assert last == nxt
        count = nxt
        if continuity == "continuous_vanishing_at_tips":
            # constrain the two arc endpoints to zero and renumber
            drop = {dof_map[0][0], dof_map[-1][-1]}
            remap = {}
            fresh = 0
            for e in range(n_el):
                for k, g in enumerate(dof_map[e]):
                    if g in drop:
                        dof_map[e][k] = -1
                    else:
                        if g not in remap:
                            remap[g] = fresh
                            fresh += 1
                        dof_map[e][k] = remap[g]
            count = fresh
    return BasisSpace(mesh, degrees, continuity, count, dof_map)


def eval_shape(space: BasisSpace, element: int, local_coord: float, dof_local: int) -> float:
    if not (0.0 <= local_coord <= 1.0):
        raise ValueError("local_coord must lie in [0,1]")
    p = space.degrees[element]
    if not (0 <= dof_local <= p):
        raise IndexError("local dof out of range")
    c = lagrange_coeffs(p)[dof_local]
    return float(np.polynomial.polynomial.polyval(local_coord, c))


@dataclass(frozen=True)
class TimeBasis:
    kind: str  # "piecewise_constant" | "piecewise_linear_hat"
    grid: TimeGrid


def eval_time_basis(tb: TimeBasis, n: int, t: float) -> float:
    if not (0 <= n < tb.grid.n_steps):
        raise IndexError("time index out of range")
    dt = tb.grid.dt
    tn, tn1 = n * dt, (n + 1) * dt
    if tb.kind == "piecewise_constant":
        return 1.0 if tn <= t < tn1 else 0.0
    if tb.kind == "piecewise_linear_hat":
        v = 0.0
        if t >= tn:
            v += (t - tn) / dt
        if t >= tn1:
            v -= (t - tn1) / dt
        return v
    raise ValueError(f"unknown time basis {tb.kind!r}")
