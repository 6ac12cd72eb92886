"""Materials, geometries, time grids, and mesh generation.

Meshes are built on a reference side parameterized by s in [0,1] and mapped
affinely onto each geometry side.  Refinement rules:

- uniform(M): M equal elements.
- algebraic(beta_tilde, N_l): nodes clustered toward both side endpoints by
  the power rule; on the half interval the k-th node sits at
  (1/2)*(k/N_l)**beta_tilde, mirrored about the midpoint.  An odd total
  element count places the extra element across the center.
- geometric(sigma, N_l): element lengths shrink by the factor sigma toward
  both endpoints; the node next to the left endpoint of a unit side is at
  (sigma**(N_l + 1 - j)) / 2 relative positions, mirrored on the right, so
  the smallest element has length sigma**N_l / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Material:
    lam: float
    mu: float
    rho: float
    c_p: float
    c_s: float
    poisson: float
    kolosov: float


def make_material(lam: float, mu: float, rho: float) -> Material:
    if lam <= 0 or mu <= 0 or rho <= 0:
        raise ValueError("material parameters must be positive")
    c_p = math.sqrt((lam + 2 * mu) / rho)
    c_s = math.sqrt(mu / rho)
    poisson = lam / (2 * (lam + mu))
    kolosov = 3 - 4 * poisson
    return Material(lam, mu, rho, c_p, c_s, poisson, kolosov)


@dataclass(frozen=True)
class BoundaryGeometry:
    kind: str  # "open_segment" | "polygon"
    points: np.ndarray  # (2,2) endpoints, or (n,2) vertices in order

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if self.kind == "open_segment":
            if pts.shape != (2, 2) or np.allclose(pts[0], pts[1]):
                raise ValueError("open_segment needs two distinct endpoints")
        elif self.kind == "polygon":
            if pts.shape[0] < 3:
                raise ValueError("polygon needs at least 3 vertices")
            for i in range(len(pts)):
                a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
                if np.allclose(a, b):
                    raise ValueError("repeated polygon vertex")
                cross = (b - a)[0] * (c - b)[1] - (b - a)[1] * (c - b)[0]
                if abs(cross) < 1e-14:
                    raise ValueError("collinear consecutive polygon vertices")
        else:
            raise ValueError(f"unknown geometry kind {self.kind!r}")

    @property
    def n_sides(self) -> int:
        return 1 if self.kind == "open_segment" else len(self.points)

    def side(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        if self.kind == "open_segment":
            return self.points[0], self.points[1]
        return self.points[i], self.points[(i + 1) % len(self.points)]


@dataclass(frozen=True)
class MeshSpec:
    refinement: str  # "uniform" | "algebraic" | "geometric"
    n_elements: int | None = None  # uniform / algebraic total per side
    beta_tilde: float = 1.0
    sigma: float = 0.5
    n_levels: int | None = None  # geometric: N_l refinements per half side

    def __post_init__(self):
        if self.refinement == "uniform":
            if not self.n_elements or self.n_elements < 1:
                raise ValueError("uniform mesh needs n_elements >= 1")
        elif self.refinement == "algebraic":
            if not self.n_elements or self.n_elements < 1:
                raise ValueError("algebraic mesh needs n_elements >= 1")
            if self.beta_tilde < 1:
                raise ValueError("beta_tilde must be >= 1")
        elif self.refinement == "geometric":
            if not (0 < self.sigma <= 0.5):
                raise ValueError("sigma must lie in (0, 1/2]")
            if self.n_levels is None or self.n_levels < 0:
                raise ValueError("geometric mesh needs n_levels >= 0")
        else:
            raise ValueError(f"unknown refinement {self.refinement!r}")


@dataclass(frozen=True)
class BoundaryMesh:
    nodes: np.ndarray  # (n_nodes, 2)
    elements: np.ndarray  # (n_el, 2) node index pairs, ordered along Gamma
    topology: str  # "open" | "closed"
    side_of_element: np.ndarray = field(default=None)  # geometry side index

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    def element_endpoints(self, e: int) -> tuple[np.ndarray, np.ndarray]:
        i, j = self.elements[e]
        return self.nodes[i], self.nodes[j]

    def element_lengths(self) -> np.ndarray:
        a = self.nodes[self.elements[:, 0]]
        b = self.nodes[self.elements[:, 1]]
        return np.hypot(*(b - a).T)


def _reference_side_nodes(spec: MeshSpec) -> np.ndarray:
    """Node parameters in [0,1] for one side, graded toward both endpoints."""
    if spec.refinement == "uniform":
        return np.linspace(0.0, 1.0, spec.n_elements + 1)
    if spec.refinement == "algebraic":
        n = spec.n_elements
        bt = spec.beta_tilde
        m = n // 2
        if n % 2 == 0:
            left = 0.5 * (np.arange(m + 1) / m) ** bt
        else:
            left = 0.5 * (np.arange(m + 1) / (m + 0.5)) ** bt
        right = 1.0 - left[::-1]
        if n % 2 == 0:
            return np.concatenate([left, right[1:]])
        return np.concatenate([left, right])
    # geometric
    n = spec.n_levels
    left = np.concatenate([[0.0], 0.5 * spec.sigma ** (n - np.arange(n + 1))])
    right = 1.0 - left[-2::-1]
    return np.concatenate([left, right])


def make_mesh(geometry: BoundaryGeometry, spec: MeshSpec,
              per_side_elements: list[int] | None = None) -> BoundaryMesh:
    """Mesh a geometry side by side.

    per_side_elements overrides spec.n_elements per polygon side (used for
    polygons whose sides carry different element counts).
    """
    nodes = []
    elements = []
    side_of = []
    n_sides = geometry.n_sides
    for si in range(n_sides):
        a, b = geometry.side(si)
        if per_side_elements is not None and spec.refinement in ("uniform", "algebraic"):
            side_spec = MeshSpec(spec.refinement, per_side_elements[si],
                                 spec.beta_tilde, spec.sigma, spec.n_levels)
        else:
            side_spec = spec
        s = _reference_side_nodes(side_spec)
        pts = a[None, :] + s[:, None] * (b - a)[None, :]
        if si == 0:
            start = 0
            nodes.extend(pts)
        else:
            start = len(nodes) - 1
            nodes.extend(pts[1:])
        n_el = len(s) - 1
        for k in range(n_el):
            elements.append((start + k, start + k + 1))
        side_of.extend([si] * n_el)
    nodes = np.array(nodes)
    elements = np.array(elements, dtype=np.int64)
    if geometry.kind == "polygon":
        # last node coincides with the first; close the loop
        nodes = nodes[:-1]
        elements[-1, 1] = 0
        topology = "closed"
    else:
        topology = "open"
    return BoundaryMesh(nodes, elements, topology, np.array(side_of, dtype=np.int64))


def mesh_stats(mesh: BoundaryMesh) -> tuple[float, float, int]:
    lengths = mesh.element_lengths()
    return float(lengths.max()), float(lengths.min()), mesh.n_elements


@dataclass(frozen=True)
class TimeGrid:
    T: float
    n_steps: int

    def __post_init__(self):
        if self.T <= 0 or self.n_steps < 1:
            raise ValueError("need T > 0 and n_steps >= 1")

    @property
    def dt(self) -> float:
        return self.T / self.n_steps

    def t(self, n: int) -> float:
        return n * self.dt


def write_mesh(mesh: BoundaryMesh, path: str) -> None:
    """Plain-text serialization: nodes then elements, read back bit-exactly."""
    with open(path, "w") as f:
        f.write(f"{len(mesh.nodes)} {len(mesh.elements)} {mesh.topology}\n")
        for x, y in mesh.nodes:
            f.write(f"{x:.17g} {y:.17g}\n")
        for i, j in mesh.elements:
            f.write(f"{i} {j}\n")


def read_mesh(path: str) -> BoundaryMesh:
    with open(path) as f:
        n_nodes, n_el, topology = f.readline().split()
        n_nodes, n_el = int(n_nodes), int(n_el)
        nodes = np.array([[float(v) for v in f.readline().split()]
                          for _ in range(n_nodes)])
        elements = np.array([[int(v) for v in f.readline().split()]
                             for _ in range(n_el)], dtype=np.int64)
    return BoundaryMesh(nodes, elements, topology)
