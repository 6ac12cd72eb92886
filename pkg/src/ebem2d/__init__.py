"""Energetic space-time Galerkin boundary elements for 2D elastodynamics.

Solves soft (Dirichlet, weakly singular operator V) and hard (Neumann,
hypersingular operator W) scattering problems on open arcs and closed
polygons by marching-on-in-time through a block lower-triangular Toeplitz
system, with h / p / hp refinement on algebraically and geometrically
graded meshes, plus a corner singular-exponent analyzer.
"""

from .core_model import (
    Material,
    BoundaryGeometry,
    MeshSpec,
    BoundaryMesh,
    TimeGrid,
    make_material,
    make_mesh,
    mesh_stats,
)
from .basis import BasisSpace, TimeBasis, build_space, eval_shape, eval_time_basis
from .core_model import read_mesh, write_mesh
from .solver import (
    mot_solve,
    mot_residual,
    energy,
    eval_on_boundary,
    elastostatic_reference,
    eval_single_layer_potential,
)
from .assembly import (
    BoundaryDatum,
    RhsHistory,
    ToeplitzBlockSystem,
    assemble_rhs_dirichlet,
    assemble_rhs_neumann,
    build_system_v,
    build_system_w,
    load_blocks,
    save_blocks,
)
from .experiments import (
    ExperimentConfig,
    LevelSpec,
    PRESETS,
    parse_config,
    run_experiment,
    write_config,
)
from .singular_analysis import (
    exponent_elastic,
    exponent_wave,
    exponent_asymptotics,
    legendre_p,
    exponent_cone,
    fit_power_law,
)

__all__ = [
    "Material",
    "BoundaryGeometry",
    "MeshSpec",
    "BoundaryMesh",
    "TimeGrid",
    "make_material",
    "make_mesh",
    "mesh_stats",
    "read_mesh",
    "write_mesh",
    "BasisSpace",
    "TimeBasis",
    "build_space",
    "eval_shape",
    "eval_time_basis",
    "mot_solve",
    "mot_residual",
    "energy",
    "eval_on_boundary",
    "elastostatic_reference",
    "eval_single_layer_potential",
    "BoundaryDatum",
    "RhsHistory",
    "ToeplitzBlockSystem",
    "assemble_rhs_dirichlet",
    "assemble_rhs_neumann",
    "build_system_v",
    "build_system_w",
    "load_blocks",
    "save_blocks",
    "ExperimentConfig",
    "LevelSpec",
    "PRESETS",
    "parse_config",
    "run_experiment",
    "write_config",
    "exponent_elastic",
    "exponent_wave",
    "exponent_asymptotics",
    "legendre_p",
    "exponent_cone",
    "fit_power_law",
]
