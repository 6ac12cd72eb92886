"""Marching-on-in-time solver: exactness against a dense space-time solve,
residual evaluation, boundary evaluation of the discrete unknown, and the
long-time crack reference profile."""

import numpy as np
import pytest
import scipy.linalg

import ebem2d as eb
from ebem2d.assembly import RhsHistory, ToeplitzBlockSystem
from ebem2d.solver import TimeHistorySolution, elastostatic_reference, mot_residual

MAT = eb.make_material(2.0, 1.0, 1.0)
CRACK = eb.BoundaryGeometry("open_segment", [(-0.5, 0.0), (0.5, 0.0)])


def _manufactured_system(n2=6, N=9, seed=3):
    """Well-conditioned random Toeplitz blocks with a dominant diagonal."""
    rng = np.random.default_rng(seed)
    blocks = 0.1 * rng.standard_normal((N, n2, n2))
    blocks[0] = blocks[0] @ blocks[0].T + n2 * np.eye(n2)
    mesh = eb.make_mesh(CRACK, eb.MeshSpec("uniform", n_elements=3))
    space = eb.build_space(mesh, 0, "discontinuous")
    tg = eb.TimeGrid(1.0, N)
    system = ToeplitzBlockSystem(blocks, "dirichlet_traction", space, tg)
    rhs = RhsHistory(rng.standard_normal((N, n2)))
    return system, rhs


def test_mot_matches_dense_solve():
    system, rhs = _manufactured_system()
    sol = eb.mot_solve(system, rhs)
    N, n2 = rhs.vectors.shape
    big = np.zeros((N * n2, N * n2))
    for n in range(N):
        for k in range(n + 1):
            big[n * n2:(n + 1) * n2, k * n2:(k + 1) * n2] = \
                system.blocks[n - k]
    ref = scipy.linalg.solve(big, rhs.vectors.reshape(-1)).reshape(N, n2)
    np.testing.assert_allclose(sol.coefficients, ref, rtol=0.0, atol=1e-12)


def test_mot_residual_small_and_detects_perturbation():
    system, rhs = _manufactured_system()
    sol = eb.mot_solve(system, rhs)
    assert mot_residual(system, sol, rhs) < 1e-12
    bad = TimeHistorySolution(sol.coefficients + 1e-3, sol.space,
                              sol.time, sol.unknown_kind)
    assert mot_residual(system, bad, rhs) > 1e-5


def test_mot_zero_rhs():
    system, rhs = _manufactured_system()
    sol = eb.mot_solve(system, RhsHistory(np.zeros_like(rhs.vectors)))
    np.testing.assert_array_equal(sol.coefficients, 0.0)


def test_mot_rejects_mismatched_rhs():
    system, rhs = _manufactured_system()
    with pytest.raises(ValueError):
        eb.mot_solve(system, RhsHistory(rhs.vectors[:, :-1]))


def test_mot_rejects_singular_start():
    system, rhs = _manufactured_system()
    blocks = system.blocks.copy()
    blocks[0] = np.zeros_like(blocks[0])
    blocks[0][0, 0] = 1.0
    bad = ToeplitzBlockSystem(blocks, system.unknown_kind, system.space,
                              system.time)
    with pytest.raises(np.linalg.LinAlgError):
        eb.mot_solve(bad, rhs)


def test_energy_identity_with_rhs():
    """alpha^T E alpha computed from the blocks equals alpha^T g when alpha
    solves the system."""
    system, rhs = _manufactured_system()
    sol = eb.mot_solve(system, rhs)
    via_rhs = eb.energy(system, sol, rhs)
    via_blocks = eb.energy(system, sol)
    np.testing.assert_allclose(via_blocks, via_rhs, rtol=1e-10)


@pytest.fixture(scope="module")
def crack_solution():
    mesh = eb.make_mesh(CRACK, eb.MeshSpec("uniform", n_elements=8))
    space = eb.build_space(mesh, 1, "continuous")
    tg = eb.TimeGrid(0.5, 10)
    system = eb.build_system_v(space, tg, MAT)
    datum = eb.BoundaryDatum(space_part=lambda x: np.array([0.0, x[0] ** 4]),
                             time_part=lambda t: 1.0 if t >= 0 else 0.0)
    rhs = eb.assemble_rhs_dirichlet(space, tg, datum)
    return eb.mot_solve(system, rhs)


def test_eval_on_boundary_reproduces_nodal_coefficients(crack_solution):
    """At a node interior to the mesh and a time inside step n the traction
    evaluation returns exactly the step-n coefficient."""
    sol = crack_solution
    space = sol.space
    mesh = space.mesh
    a, b = mesh.element_endpoints(3)
    g = space.dof_map[3][0]  # left node of element 3
    M = space.dof_count
    t = 0.5 * sol.time.dt + 4 * sol.time.dt
    got = eb.eval_on_boundary(sol, a, t)
    np.testing.assert_allclose(got[0], sol.coefficients[4, g], rtol=1e-13)
    np.testing.assert_allclose(got[1], sol.coefficients[4, M + g], rtol=1e-13)


def test_eval_on_boundary_continuous_across_elements(crack_solution):
    sol = crack_solution
    mesh = sol.space.mesh
    a, _ = mesh.element_endpoints(4)
    eps = 1e-12
    lo = eb.eval_on_boundary(sol, a - np.array([eps, 0.0]), 0.3)
    hi = eb.eval_on_boundary(sol, a + np.array([eps, 0.0]), 0.3)
    np.testing.assert_allclose(lo, hi, rtol=1e-6)


def test_eval_on_boundary_rejects_off_boundary_point(crack_solution):
    with pytest.raises(ValueError, match="away from the boundary"):
        eb.eval_on_boundary(crack_solution, (0.0, 0.3), 0.2)


def test_eval_before_start_is_zero(crack_solution):
    np.testing.assert_array_equal(
        eb.eval_on_boundary(crack_solution, (0.1, 0.0), -0.5), 0.0)


def test_elastostatic_reference_profile():
    """Psi_i = k_i sqrt(1/4 - x^2) with k = -cp^2 eta / (rho cs^2 (cp^2-cs^2));
    lam=2, mu=1, rho=1 gives k2 = -4/3 and lam=7, mu=1 gives k2 = -9/8."""
    got = elastostatic_reference(0.0, [0.0, 1.0], MAT)
    np.testing.assert_allclose(got[1], -4.0 / 3.0 * 0.5, rtol=1e-14)
    assert got[0] == 0.0
    mat3 = eb.make_material(7.0, 1.0, 1.0)
    got3 = elastostatic_reference(0.0, [0.0, 1.0], mat3)
    np.testing.assert_allclose(got3[1], -9.0 / 8.0 * 0.5, rtol=1e-14)
    # the profile vanishes like a square root at the tips
    x = 0.5 - 1e-8
    np.testing.assert_allclose(
        elastostatic_reference(x, [0.0, 1.0], MAT)[1],
        -4.0 / 3.0 * np.sqrt(0.25 - x * x), rtol=1e-10)
    with pytest.raises(ValueError):
        elastostatic_reference(0.6, [0.0, 1.0], MAT)
