"""Configuration-driven convergence studies and plot-data extraction.

An experiment is a ladder of space-time discretization levels of one
scattering problem.  Each level is meshed, assembled, marched in time, and
reduced to its squared energy norm; the gap to a converged benchmark is the
squared energy-norm error of the Galerkin solution, which the rate fit
regresses against the number of degrees of freedom.

Config files are flat, line-oriented ``key = value`` text.  Ladder levels
use the ``level.`` prefix; a repeated ``level.refinement`` key starts a new
level, and subsequent ``level.*`` keys attach to the current one::

    problem = dirichlet_v
    geometry = open_segment
    points = -0.5 0 0.5 0
    material.lam = 2
    material.mu = 1
    material.rho = 1
    T = 1
    datum = x4_profile
    benchmark = 3.7915e-2
    level.refinement = algebraic
    level.n_elements = 10
    level.beta_tilde = 3
    level.degree = 0
    level.continuity = discontinuous
    level.n_steps = 80

Output CSVs have stable schemas: ``energy_ladder.csv``
(level,dof,dt,energy,sq_error), ``tip_sweep.csv`` (r,component1,component2,t),
and ``history.csv`` (t,component1,component2).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .core_model import BoundaryGeometry, Material, MeshSpec, TimeGrid, make_material, make_mesh
from .basis import build_space
from .assembly import (
    BoundaryDatum,
    assemble_rhs_dirichlet,
    assemble_rhs_neumann,
    build_system_v,
    build_system_w,
)
from .solver import energy, eval_on_boundary, mot_solve

# Converged squared energy norms used as ladder benchmarks.  The flat-crack
# value is quoted to five digits; the triangle value comes from a reference
# run at 480 DOF and time step 3.125e-3 on the most strongly graded mesh,
# one halving beyond the finest ladder level.
BENCHMARK_CRACK_X4 = 3.7915e-2
BENCHMARK_TRIANGLE_X95 = 7.75843e-2


def ramped_heaviside(t: float) -> float:
    """Causal excitation profile: sin^2 ramp on [0, 1/8], then 1."""
    if t < 0.0:
        return 0.0
    return math.sin(4.0 * math.pi * t) ** 2 if t < 0.125 else 1.0


DATA_PRESETS = {
    # both components x^4 (flat-crack convergence studies)
    "x4_profile": lambda x: np.array([x[0] ** 4, x[0] ** 4]),
    # both components x (linear datum variant)
    "x_profile": lambda x: np.array([x[0], x[0]]),
    # vertical component only, 100|x|^9.5 (polygon studies)
    "abs_x_9p5": lambda x: np.array([0.0, 100.0 * abs(x[0]) ** 9.5]),
    # vertical component only, x^4
    "x4_vertical": lambda x: np.array([0.0, x[0] ** 4]),
    # unit traction datum for the hard-scattering problem
    "constant_eta": lambda x: np.array([1.0, 1.0]),
}


@dataclass(frozen=True)
class LevelSpec:
    mesh: MeshSpec
    degree: int
    continuity: str
    n_steps: int
    per_side_elements: list | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str  # "dirichlet_v" | "neumann_w"
    geometry: BoundaryGeometry
    levels: list
    material: Material
    datum: str
    T: float
    benchmark: float | None = None
    benchmark_note: str = ""
    history_point: tuple | None = None
    sweep_corner: tuple | None = None
    sweep_times: tuple = ()

    def __post_init__(self):
        if self.problem not in ("dirichlet_v", "neumann_w"):
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.datum not in DATA_PRESETS:
            raise ValueError(f"unknown datum {self.datum!r}")
        if not self.levels:
            raise ValueError("experiment needs at least one level")


@dataclass
class ConvergenceReport:
    rows: list = field(default_factory=list)  # (level, dof, dt, energy, sq_error)
    benchmark: float | None = None
    benchmark_note: str = ""
    solutions: list = field(default_factory=list)  # (space, TimeGrid, solution)
    warnings: list = field(default_factory=list)


def _solve_level(config: ExperimentConfig, lvl: LevelSpec):
    mesh = make_mesh(config.geometry, lvl.mesh, lvl.per_side_elements)
    space = build_space(mesh, lvl.degree, lvl.continuity)
    grid = TimeGrid(config.T, lvl.n_steps)
    datum = BoundaryDatum(space_part=DATA_PRESETS[config.datum],
                          time_part=ramped_heaviside)
    if config.problem == "dirichlet_v":
        system = build_system_v(space, grid, config.material)
        rhs = assemble_rhs_dirichlet(space, grid, datum)
    else:
        system = build_system_w(space, grid, config.material)
        rhs = assemble_rhs_neumann(space, grid, datum)
    solution = mot_solve(system, rhs)
    return space, grid, system, rhs, solution


def run_experiment(config: ExperimentConfig, out_dir: str | None = None,
                   keep_solutions: bool = False) -> ConvergenceReport:
    """Solve every ladder level and reduce to an energy ladder.

    Writes ``energy_ladder.csv`` (and, when the config requests them,
    ``history.csv`` / ``tip_sweep.csv``) into *out_dir*; levels completed
    before a failure are flushed with the error context attached.
    """
    report = ConvergenceReport(benchmark=config.benchmark,
                               benchmark_note=config.benchmark_note)
    prev_energy = -math.inf
    for k, lvl in enumerate(config.levels):
        try:
            space, grid, system, rhs, solution = _solve_level(config, lvl)
        except Exception as exc:
            report.warnings.append(f"level {k}: {type(exc).__name__}: {exc}")
            if out_dir is not None:
                emit_plot_data(report, out_dir)
            raise
        ene = energy(system, solution, rhs)
        err = config.benchmark - ene if config.benchmark is not None else math.nan
        report.rows.append((k, space.dof_count, grid.dt, ene, err))
        if ene < prev_energy:
            report.warnings.append(
                f"level {k}: energy ladder not monotone ({ene:.6e} < {prev_energy:.6e})")
        prev_energy = ene
        if keep_solutions or config.history_point or config.sweep_corner:
            report.solutions.append((space, grid, solution))
    if out_dir is not None:
        emit_plot_data(report, out_dir)
        if config.history_point is not None:
            space, grid, solution = report.solutions[-1]
            write_history(os.path.join(out_dir, "history.csv"), solution, grid,
                          config.history_point)
        if config.sweep_corner is not None:
            space, grid, solution = report.solutions[-1]
            write_tip_sweep(os.path.join(out_dir, "tip_sweep.csv"), space,
                            solution, config.sweep_corner, config.sweep_times)
    return report


def rate_table(report: ConvergenceReport, skip: int = 0) -> float:
    """Least-squares slope of log(squared error) vs log(DOF).

    The energy gap to the benchmark is the squared energy-norm error by
    Galerkin orthogonality, so the expected slopes are -beta_tilde (graded
    h version, nu* = 1/2), -2 nu* beta_tilde (polygon), and -2 (p version).
    """
    rows = [r for r in report.rows[skip:] if r[4] == r[4] and r[4] > 0]
    if len(rows) < 3:
        raise ValueError("rate fit needs at least 3 levels with positive error")
    x = np.log([r[1] for r in rows])
    y = np.log([r[4] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def tip_exponent(space, solution, corner, t: float, skip: int = 2,
                 count: int = 8) -> float:
    """Fitted log-log slope of |solution| vs distance to *corner*.

    Uses element-midpoint samples; the *skip* innermost midpoints are
    excluded (the very first cells of a graded mesh under-resolve the
    singular factor) and the following *count* enter the fit, which keeps
    the window inside the asymptotic regime and away from zero crossings
    of the solution farther out.
    """
    mesh = space.mesh
    a = mesh.nodes[mesh.elements[:, 0]]
    b = mesh.nodes[mesh.elements[:, 1]]
    mids = 0.5 * (a + b)
    r = np.hypot(mids[:, 0] - corner[0], mids[:, 1] - corner[1])
    idx = np.argsort(r)[skip:skip + count]
    vals = np.array([np.linalg.norm(eval_on_boundary(solution, mids[i], t))
                     for i in idx])
    return float(np.polyfit(np.log(r[idx]), np.log(vals), 1)[0])


# ---------------------------------------------------------------------------
# CSV output


def emit_plot_data(report: ConvergenceReport, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "energy_ladder.csv"), "w") as f:
        f.write("level,dof,dt,energy,sq_error\n")
        for lvl, dof, dt, ene, err in report.rows:
            f.write(f"{lvl},{dof},{dt:.17g},{ene:.17g},{err:.17g}\n")


def write_history(path: str, solution, grid: TimeGrid, point) -> None:
    pt = np.asarray(point, dtype=float)
    with open(path, "w") as f:
        f.write("t,component1,component2\n")
        for n in range(grid.n_steps + 1):
            t = grid.t(n)
            v = eval_on_boundary(solution, pt, t)
            f.write(f"{t:.17g},{v[0]:.17g},{v[1]:.17g}\n")


def write_tip_sweep(path: str, space, solution, corner, times) -> None:
    mesh = space.mesh
    a = mesh.nodes[mesh.elements[:, 0]]
    b = mesh.nodes[mesh.elements[:, 1]]
    mids = 0.5 * (a + b)
    r = np.hypot(mids[:, 0] - corner[0], mids[:, 1] - corner[1])
    order = np.argsort(r)
    with open(path, "w") as f:
        f.write("r,component1,component2,t\n")
        for t in times:
            for i in order:
                v = eval_on_boundary(solution, mids[i], t)
                f.write(f"{r[i]:.17g},{v[0]:.17g},{v[1]:.17g},{t:.17g}\n")


def read_energy_ladder(path: str):
    rows = []
    with open(path) as f:
        next(f)
        for line in f:
            lvl, dof, dt, ene, err = line.split(",")
            rows.append((int(lvl), int(dof), float(dt), float(ene), float(err)))
    return rows


# ---------------------------------------------------------------------------
# Named presets for the standard studies


_CRACK = BoundaryGeometry("open_segment", [(-0.5, 0.0), (0.5, 0.0)])
# equilateral triangle, unit side, base on the x1 axis
_TRIANGLE_EQ = BoundaryGeometry(
    "polygon", [(-0.5, 0.0), (0.5, 0.0), (0.0, math.sqrt(3.0) / 2.0)])
# isosceles triangle with base angles 3*pi/8 (the vertex exponent is 0.542)
_TRIANGLE_3PI8 = BoundaryGeometry(
    "polygon", [(-0.5, 0.0), (0.5, 0.0), (0.0, 0.5 * math.tan(3.0 * math.pi / 8.0))])
_MAT_CP2 = make_material(2.0, 1.0, 1.0)
_MAT_CP3 = make_material(7.0, 1.0, 1.0)


def _crack_h(beta_tilde: float) -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("algebraic", 10 * 2 ** k, beta_tilde),
                        0, "discontinuous", 80 * 2 ** k)
              for k in range(4)]
    return ExperimentConfig("dirichlet_v", _CRACK, levels, _MAT_CP2,
                            "x4_profile", 1.0, BENCHMARK_CRACK_X4,
                            "converged flat-crack value")


def _crack_p() -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("uniform", 10), p, "continuous", 40 * 2 ** (p - 1))
              for p in range(1, 5)]
    return ExperimentConfig("dirichlet_v", _CRACK, levels, _MAT_CP2,
                            "x4_profile", 1.0, BENCHMARK_CRACK_X4,
                            "converged flat-crack value")


def _crack_hp(sigma: float) -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("uniform", 2), 0, "discontinuous", 4)]
    levels += [LevelSpec(MeshSpec("geometric", sigma=sigma, n_levels=p),
                         p, "continuous", 4 * 2 ** p)
               for p in range(1, 8)]
    return ExperimentConfig("dirichlet_v", _CRACK, levels, _MAT_CP2,
                            "x4_profile", 1.0, BENCHMARK_CRACK_X4,
                            "converged flat-crack value")


def _triangle_h(beta_tilde: float) -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("algebraic", 10 * 2 ** k, beta_tilde),
                        0, "discontinuous", 20 * 2 ** k)
              for k in range(4)]
    return ExperimentConfig("dirichlet_v", _TRIANGLE_EQ, levels, _MAT_CP2,
                            "abs_x_9p5", 1.0, BENCHMARK_TRIANGLE_X95,
                            "reference run, 480 DOF, dt 3.125e-3")


def _crack_tip_sweep() -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("algebraic", 80, 3.0), 0, "discontinuous", 160)]
    return ExperimentConfig("dirichlet_v", _CRACK, levels, _MAT_CP2,
                            "x4_profile", 1.0,
                            sweep_corner=(-0.5, 0.0), sweep_times=(0.5, 0.75, 1.0))


def _corner_sweep_3pi8() -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("algebraic", 80, 3.0), 0, "discontinuous", 160,
                        per_side_elements=[75, 80, 80])]
    return ExperimentConfig("dirichlet_v", _TRIANGLE_3PI8, levels, _MAT_CP2,
                            "x4_vertical", 1.0,
                            sweep_corner=(0.5, 0.0), sweep_times=(0.5, 0.75, 1.0))


def _neumann_limit(material: Material) -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("uniform", 40), 1,
                        "continuous_vanishing_at_tips", 600)]
    return ExperimentConfig("neumann_w", _CRACK, levels, material,
                            "constant_eta", 7.5, history_point=(0.0, 0.0))


def _neumann_h(beta_tilde: float) -> ExperimentConfig:
    levels = [LevelSpec(MeshSpec("algebraic", 10 * 2 ** k, beta_tilde),
                        1, "continuous_vanishing_at_tips", 40 * 2 ** k)
              for k in range(4)]
    return ExperimentConfig("neumann_w", _CRACK, levels, _MAT_CP2,
                            "constant_eta", 2.0)


PRESETS = {
    "example1_h_beta1": lambda: _crack_h(1.0),
    "example1_h_beta2": lambda: _crack_h(2.0),
    "example1_h_beta3": lambda: _crack_h(3.0),
    "example1_p": _crack_p,
    "example1_hp_sigma05": lambda: _crack_hp(0.5),
    "example1_hp_sigma02": lambda: _crack_hp(0.2),
    "example1_tip_sweep": _crack_tip_sweep,
    "example3_tri_beta1": lambda: _triangle_h(1.0),
    "example3_tri_beta2": lambda: _triangle_h(2.0),
    "example3_tri_beta3": lambda: _triangle_h(3.0),
    "example4_corner_sweep": _corner_sweep_3pi8,
    "example5_cp2": lambda: _neumann_limit(_MAT_CP2),
    "example5_cp3": lambda: _neumann_limit(_MAT_CP3),
    "example5_h_beta1": lambda: _neumann_h(1.0),
    "example5_h_beta2": lambda: _neumann_h(2.0),
}


# ---------------------------------------------------------------------------
# Flat key=value config files


class ConfigError(ValueError):
    pass


def parse_config(path: str) -> ExperimentConfig:
    scalars: dict[str, str] = {}
    levels: list[dict[str, str]] = []
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key.startswith("level."):
                sub = key[len("level."):]
                if sub == "refinement" or not levels:
                    levels.append({})
                if sub in levels[-1]:
                    raise ConfigError(f"{path}:{lineno}: duplicate {key} in level")
                levels[-1][sub] = val
            else:
                if key in scalars:
                    raise ConfigError(f"{path}:{lineno}: duplicate key {key}")
                scalars[key] = val
    try:
        return _build_config(scalars, levels)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from exc


def _build_config(scalars, levels) -> ExperimentConfig:
    pts = [float(v) for v in scalars["points"].split()]
    if len(pts) % 2:
        raise ConfigError("points needs an even number of coordinates")
    geometry = BoundaryGeometry(scalars["geometry"],
                                np.array(pts).reshape(-1, 2))
    material = make_material(float(scalars["material.lam"]),
                             float(scalars["material.mu"]),
                             float(scalars["material.rho"]))
    lvl_specs = []
    for lv in levels:
        refinement = lv["refinement"]
        mesh = MeshSpec(refinement,
                        n_elements=int(lv["n_elements"]) if "n_elements" in lv else None,
                        beta_tilde=float(lv.get("beta_tilde", 1.0)),
                        sigma=float(lv.get("sigma", 0.5)),
                        n_levels=int(lv["n_levels"]) if "n_levels" in lv else None)
        per_side = ([int(v) for v in lv["per_side_elements"].split()]
                    if "per_side_elements" in lv else None)
        lvl_specs.append(LevelSpec(mesh, int(lv.get("degree", 0)),
                                   lv.get("continuity", "discontinuous"),
                                   int(lv["n_steps"]), per_side))
    opt = {}
    if "benchmark" in scalars:
        opt["benchmark"] = float(scalars["benchmark"])
        opt["benchmark_note"] = scalars.get("benchmark_note", "config value")
    if "history_point" in scalars:
        opt["history_point"] = tuple(float(v) for v in scalars["history_point"].split())
    if "sweep_corner" in scalars:
        opt["sweep_corner"] = tuple(float(v) for v in scalars["sweep_corner"].split())
    if "sweep_times" in scalars:
        opt["sweep_times"] = tuple(float(v) for v in scalars["sweep_times"].split())
    return ExperimentConfig(scalars["problem"], geometry, lvl_specs, material,
                            scalars["datum"], float(scalars["T"]), **opt)


def write_config(config: ExperimentConfig, path: str) -> None:
    lines = [f"problem = {config.problem}",
             f"geometry = {config.geometry.kind}",
             "points = " + " ".join(f"{v:.17g}" for v in config.geometry.points.ravel()),
             f"material.lam = {config.material.lam:.17g}",
             f"material.mu = {config.material.mu:.17g}",
             f"material.rho = {config.material.rho:.17g}",
             f"T = {config.T:.17g}",
             f"datum = {config.datum}"]
    if config.benchmark is not None:
        lines.append(f"benchmark = {config.benchmark:.17g}")
        lines.append(f"benchmark_note = {config.benchmark_note}")
    if config.history_point is not None:
        lines.append("history_point = " + " ".join(f"{v:.17g}" for v in config.history_point))
    if config.sweep_corner is not None:
        lines.append("sweep_corner = " + " ".join(f"{v:.17g}" for v in config.sweep_corner))
    if config.sweep_times:
        lines.append("sweep_times = " + " ".join(f"{v:.17g}" for v in config.sweep_times))
    for lvl in config.levels:
        m = lvl.mesh
        lines.append(f"level.refinement = {m.refinement}")
        if m.n_elements is not None:
            lines.append(f"level.n_elements = {m.n_elements}")
        if m.refinement == "algebraic":
            lines.append(f"level.beta_tilde = {m.beta_tilde:.17g}")
        if m.refinement == "geometric":
            lines.append(f"level.sigma = {m.sigma:.17g}")
            lines.append(f"level.n_levels = {m.n_levels}")
        if lvl.per_side_elements is not None:
            lines.append("level.per_side_elements = "
                         + " ".join(str(v) for v in lvl.per_side_elements))
        lines.append(f"level.degree = {lvl.degree}")
        lines.append(f"level.continuity = {lvl.continuity}")
        lines.append(f"level.n_steps = {lvl.n_steps}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
