"""End-to-end acceptance suite.

Ten numbered criteria, each printing a single PASS/FAIL line with the
measured quantities. Heavy convergence ladders are solved once per session
and shared between criteria. Reference energies and exponents come from
published benchmark tables for the flat-crack and triangle scatterers; known
discrepancies (documented in the project notes) are reported honestly as
FAIL lines rather than patched tolerances.
"""

import math
import sys

import numpy as np
import pytest
import scipy.integrate

import ebem2d as eb
from ebem2d.assembly import RhsHistory
from ebem2d.experiments import (
    BENCHMARK_CRACK_X4,
    PRESETS,
    run_experiment,
    rate_table,
    tip_exponent,
)
from ebem2d.kernels import (
    kernel_v,
    kernel_v_reduced,
    kernel_w,
    traction_of_kernel_v_fd,
)
from ebem2d.quadrature import integrate_pair_v
from ebem2d.singular_analysis import (
    ConeExponentProblem,
    ExponentProblem,
    cone_residual,
    exponent_cone,
    exponent_elastic,
    legendre_p,
)
from ebem2d.solver import TimeHistorySolution, elastostatic_reference, mot_residual

MAT = eb.make_material(2.0, 1.0, 1.0)
CRACK = eb.BoundaryGeometry("open_segment", [(-0.5, 0.0), (0.5, 0.0)])

# published energies, flat crack, x^4 datum: algebraically graded meshes,
# 10/20/40/80 elements, dt halved alongside
TABLE_H = {
    1.0: (3.0143e-2, 3.3906e-2, 3.5933e-2, 3.6943e-2),
    2.0: (3.6212e-2, 3.7501e-2, 3.7813e-2, 3.7890e-2),
    3.0: (3.7315e-2, 3.7835e-2, 3.7903e-2, 3.7914e-2),
}
# published energies, same problem, uniform mesh of 10 elements, p = 1..4
TABLE_P = (3.4108e-2, 3.6257e-2, 3.7012e-2, 3.7338e-2)
# published energies, equilateral triangle, 100|x1|^9.5 datum
TABLE_TRI = {
    1.0: (5.7394e-2, 6.8490e-2, 7.3821e-2, 7.5989e-2),
    2.0: (7.4875e-2, 7.6828e-2, 7.7448e-2, 7.7558e-2),
    3.0: (7.6829e-2, 7.7460e-2, 7.7566e-2, 7.7582e-2),
}
# published corner exponents (interior opening angle omega, nu)
PUBLISHED_EXPONENTS = (
    (7.0 * math.pi / 24.0, 0.5372),
    (math.pi / 3.0, 0.5451),
    (3.0 * math.pi / 8.0, 0.542),
    (3.0 * math.pi / 5.0, 0.6306),
)


def _criterion(num: int, desc: str, ok: bool, detail: str) -> None:
    mark = "PASS" if ok else "FAIL"
    line = f"[PRIMARY criterion {num:2d}] {mark} - {desc}: {detail}"
    print(line, file=sys.__stdout__, flush=True)
    assert ok, line


def _local_slopes(rows):
    """Local log(sq_error)/log(DOF) slopes between consecutive levels with
    positive squared error."""
    slopes = []
    for (l0, d0, _, _, e0), (l1, d1, _, _, e1) in zip(rows[:-1], rows[1:]):
        if e0 <= 0 or e1 <= 0:
            break
        slopes.append((math.log(e1) - math.log(e0))
                      / (math.log(d1) - math.log(d0)))
    return slopes


# ---------------------------------------------------------------------------
# shared heavy runs


@pytest.fixture(scope="session")
def crack_h_reports():
    return {bt: run_experiment(PRESETS[f"example1_h_beta{int(bt)}"]())
            for bt in (1.0, 2.0, 3.0)}


@pytest.fixture(scope="session")
def crack_p_report():
    return run_experiment(PRESETS["example1_p"]())


@pytest.fixture(scope="session")
def crack_hp_reports():
    out = {}
    for sigma, name in ((0.5, "example1_hp_sigma05"), (0.2, "example1_hp_sigma02")):
        cfg = PRESETS[name]()
        cfg = type(cfg)(cfg.problem, cfg.geometry, cfg.levels[:6], cfg.material,
                        cfg.datum, cfg.T, cfg.benchmark, cfg.benchmark_note)
        out[sigma] = run_experiment(cfg)
    return out


@pytest.fixture(scope="session")
def triangle_reports():
    return {bt: run_experiment(PRESETS[f"example3_tri_beta{int(bt)}"]())
            for bt in (1.0, 2.0, 3.0)}


@pytest.fixture(scope="session")
def tip_sweep_runs():
    crack = run_experiment(PRESETS["example1_tip_sweep"](), keep_solutions=True)
    corner = run_experiment(PRESETS["example4_corner_sweep"](), keep_solutions=True)
    return crack, corner


@pytest.fixture(scope="session")
def neumann_limits():
    return {name: run_experiment(PRESETS[name](), keep_solutions=True)
            for name in ("example5_cp2", "example5_cp3")}


# ---------------------------------------------------------------------------
# criteria


def test_criterion_01_corner_exponents():
    errs = []
    for omega, published in PUBLISHED_EXPONENTS:
        nu = exponent_elastic(
            ExponentProblem(2.0 * math.pi - omega, "dirichlet", 5.0 / 3.0))
        errs.append((omega, published, nu, abs(nu - published)))
    k_star = (MAT.lam + 3.0 * MAT.mu) / (MAT.lam + MAT.mu)
    k_ok = abs(k_star - 5.0 / 3.0) < 5e-4
    crack = exponent_elastic(ExponentProblem(2.0 * math.pi, "dirichlet", 5.0 / 3.0))
    crack_ok = abs(crack - 0.5) < 1e-10
    ok = all(e[3] < 5e-4 for e in errs) and k_ok and crack_ok
    worst = max(errs, key=lambda e: e[3])
    _criterion(1, "corner singular exponents", ok,
               f"worst |err|={worst[3]:.2e} at omega={worst[0]:.4f} "
               f"(published {worst[1]}, computed {worst[2]:.5f}); "
               f"k*={k_star:.6f}, crack exponent {crack:.12f}")


def test_criterion_02_crack_graded_energies(crack_h_reports):
    worst = 0.0
    for bt, refs in TABLE_H.items():
        got = [r[3] for r in crack_h_reports[bt].rows]
        for g, ref in zip(got, refs):
            worst = max(worst, abs(g - ref) / ref)
    fine = crack_h_reports[3.0].rows[-1][3]
    fine_rel = abs(fine - 3.7914e-2) / 3.7914e-2
    ok = worst < 1e-2 and fine_rel < 5e-3
    _criterion(2, "graded-mesh energy table (flat crack)", ok,
               f"worst rel err {worst:.2e} over 12 energies; "
               f"80-element beta=3 energy {fine:.5e} (rel {fine_rel:.2e})")


def test_criterion_03_p_version(crack_p_report):
    got = [r[3] for r in crack_p_report.rows]
    worst = max(abs(g - ref) / ref for g, ref in zip(got, TABLE_P))
    energies_ok = worst < 1e-2
    slope = rate_table(crack_p_report)
    slope_ok = abs(slope - (-2.0)) <= 0.2
    _criterion(3, "p-version ladder (uniform mesh)", energies_ok and slope_ok,
               f"worst energy rel err {worst:.2e} (p=1..4); "
               f"squared-error slope vs DOF {slope:.3f} (target -2 +- 0.2)")


def test_criterion_04_hp_geometric(crack_hp_reports):
    details = []
    ok = True
    for sigma, report in crack_hp_reports.items():
        enes = [r[3] for r in report.rows]
        mono = all(b > a for a, b in zip(enes[:-1], enes[1:]))
        errs = [abs(BENCHMARK_CRACK_X4 - e) for e in enes]
        approach = all(b < a for a, b in zip(errs[:-1], errs[1:]))
        slopes = _local_slopes(report.rows)
        mags = [abs(s) for s in slopes]
        run = best = 1
        for a, b in zip(mags[:-1], mags[1:]):
            run = run + 1 if b > a else 1
            best = max(best, run)
        ok = ok and mono and approach and best >= 3
        details.append(f"sigma={sigma}: final |err|={errs[-1]:.2e}, "
                       f"steepening run {best}, mono={mono and approach}")
    _criterion(4, "geometric hp ladders", ok, "; ".join(details))


def test_criterion_05_graded_rates(crack_h_reports):
    details = []
    ok = True
    for bt in (1.0, 2.0, 3.0):
        slope = rate_table(crack_h_reports[bt])
        ok = ok and abs(slope - (-bt)) <= 0.15
        details.append(f"beta={bt:g}: {slope:.3f}")
    _criterion(5, "graded-mesh convergence rates (targets -1/-2/-3)",
               ok, "; ".join(details))


def test_criterion_06_triangle(triangle_reports):
    worst = 0.0
    for bt, refs in TABLE_TRI.items():
        got = [r[3] for r in triangle_reports[bt].rows]
        for g, ref in zip(got, refs):
            worst = max(worst, abs(g - ref) / ref)
    energies_ok = worst < 1e-2
    nu = 0.5451  # base-corner exponent of the equilateral triangle
    details = [f"worst energy rel err {worst:.2e}"]
    slopes_ok = True
    for bt in (1.0, 2.0, 3.0):
        slope = rate_table(triangle_reports[bt])
        target = -2.0 * nu * bt
        good = abs(slope - target) <= 0.2
        slopes_ok = slopes_ok and good
        details.append(f"beta={bt:g}: slope {slope:.3f} (target {target:.3f})")
    _criterion(6, "triangle energy table and rates", energies_ok and slopes_ok,
               "; ".join(details))


def test_criterion_07_near_tip_exponents(tip_sweep_runs):
    crack, corner = tip_sweep_runs
    details = []
    ok = True
    space, _, solution = crack.solutions[-1]
    for t in (0.5, 0.75, 1.0):
        s = tip_exponent(space, solution, (-0.5, 0.0), t)
        ok = ok and abs(s - (-0.5)) <= 0.05
        details.append(f"crack t={t:g}: {s:.3f}")
    space_c, _, sol_c = corner.solutions[-1]
    s = tip_exponent(space_c, sol_c, (0.5, 0.0), 1.0)
    target = -(1.0 - 0.542)
    ok = ok and abs(s - target) <= 0.05
    details.append(f"corner t=1: {s:.3f} (target {target:.3f})")
    _criterion(7, "near-tip solution exponents", ok, "; ".join(details))


def test_criterion_08_long_time_limit(neumann_limits):
    details = []
    ok = True
    for name, k2 in (("example5_cp2", -4.0 / 3.0), ("example5_cp3", -9.0 / 8.0)):
        report = neumann_limits[name]
        space, grid, solution = report.solutions[-1]
        mid = eb.eval_on_boundary(solution, (0.0, 0.0), grid.T)[1]
        expect = k2 * 0.5
        mid_rel = abs(mid - expect) / abs(expect)
        mat = eb.make_material(2.0, 1.0, 1.0) if name.endswith("cp2") \
            else eb.make_material(7.0, 1.0, 1.0)
        num = den = 0.0
        mesh = space.mesh
        for e in range(mesh.n_elements):
            a, b = mesh.element_endpoints(e)
            x = 0.5 * (a + b)
            got = eb.eval_on_boundary(solution, x, grid.T)[1]
            ref = elastostatic_reference(float(x[0]), [0.0, 1.0], mat)[1]
            L = float(np.hypot(*(b - a)))
            num += L * (got - ref) ** 2
            den += L * ref ** 2
        l2_rel = math.sqrt(num / den)
        ok = ok and mid_rel < 2e-2 and l2_rel < 3e-2
        details.append(f"{name}: midpoint {mid:.5f} vs {expect:.5f} "
                       f"(rel {mid_rel:.2e}), L2 dev {l2_rel:.2e}")
    _criterion(8, "long-time elastostatic limit", ok, "; ".join(details))


def test_criterion_09_property_suites():
    parts = []

    # (a) reduced closed form vs per-front sum, 1e-12
    worst = 0.0
    for r in (0.05, 0.2, 0.5, 0.9):
        for theta in (0.3, 2.0, 4.4):
            p = (r * math.cos(theta), r * math.sin(theta))
            for delta in (1.0, 2.5):
                for i in range(2):
                    for j in range(2):
                        a = kernel_v(i, j, p, delta, MAT)
                        b = kernel_v_reduced(i, j, p, delta, MAT)
                        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    a_ok = worst < 1e-12
    parts.append(f"reduced-form {worst:.1e}")

    # (b) finite-difference traction oracle converges at order 2
    rng = np.random.default_rng(7)
    orders = []
    for _ in range(6):
        r = rng.uniform(0.3, 0.8)
        th = rng.uniform(0.0, 2 * math.pi)
        p = (r * math.cos(th), r * math.sin(th))
        nx = (math.cos(rng.uniform(0, 2 * math.pi)),
              math.sin(rng.uniform(0, 2 * math.pi)))
        nxi = (math.cos(rng.uniform(0, 2 * math.pi)),
               math.sin(rng.uniform(0, 2 * math.pi)))
        i, j = rng.integers(0, 2, size=2)
        exact = kernel_w(i, j, p, 1.0, MAT, nx, nxi)
        e1 = abs(traction_of_kernel_v_fd(i, j, p, 1.0, MAT, nx, nxi, 2e-3) - exact)
        e2 = abs(traction_of_kernel_v_fd(i, j, p, 1.0, MAT, nx, nxi, 1e-3) - exact)
        if e2 > 1e-13:
            orders.append(math.log2(e1 / e2))
    fd_order = float(np.mean(orders))
    b_ok = abs(fd_order - 2.0) <= 0.2
    parts.append(f"FD order {fd_order:.2f}")

    # (c) Toeplitz structure and causality
    mesh = eb.make_mesh(CRACK, eb.MeshSpec("uniform", n_elements=6))
    space = eb.build_space(mesh, 0, "discontinuous")
    tg = eb.TimeGrid(0.5, 12)
    system = eb.build_system_v(space, tg, MAT)
    short = eb.build_system_v(space, eb.TimeGrid(0.25, 6), MAT)
    toe = float(np.max(np.abs(system.blocks[:6] - short.blocks)))
    vecs = np.zeros((12, 2 * space.dof_count))
    vecs[5:] = 1.0
    sol = eb.mot_solve(system, RhsHistory(vecs))
    caus = float(np.max(np.abs(sol.coefficients[:5])))
    c_ok = toe < 1e-13 and caus < 1e-13
    parts.append(f"Toeplitz {toe:.1e}, causality {caus:.1e}")

    # (d) coercivity on 100 random coefficient histories
    rng2 = np.random.default_rng(11)
    emin = math.inf
    for _ in range(100):
        a = rng2.standard_normal((12, system.blocks.shape[1]))
        s = TimeHistorySolution(a, space, tg, "dirichlet_traction")
        emin = min(emin, eb.energy(system, s))
    d_ok = emin > 0.0
    parts.append(f"min energy {emin:.2e}")

    # (e) element-pair quadrature vs brute-force nested quadrature, 50 pairs
    def oracle(e1, e2, delta):
        (a1, b1), (a2, b2) = np.asarray(e1, float), np.asarray(e2, float)
        L1, L2 = float(np.hypot(*(b1 - a1))), float(np.hypot(*(b2 - a2)))

        def entry(i, j):
            def outer(s1):
                x = a1 + s1 * (b1 - a1)

                def inner(s2):
                    rv = x - (a2 + s2 * (b2 - a2))
                    return kernel_v(i, j, rv, delta, MAT)

                v, _ = scipy.integrate.quad(inner, 0.0, 1.0, limit=200,
                                            epsabs=1e-12, epsrel=1e-11)
                return v

            v, _ = scipy.integrate.quad(outer, 0.0, 1.0, limit=200,
                                        epsabs=1e-11, epsrel=1e-10)
            return v * L1 * L2

        return np.array([[entry(i, j) for j in range(2)] for i in range(2)])

    rng3 = np.random.default_rng(23)
    qworst = 0.0
    for _ in range(50):
        x0 = rng3.uniform(-0.5, 0.0)
        x1 = x0 + rng3.uniform(0.05, 0.2)
        x2 = x1 + rng3.uniform(0.02, 0.2)
        x3 = x2 + rng3.uniform(0.05, 0.2)
        e1 = ((x0, 0.0), (x1, 0.0))
        e2 = ((x2, 0.0), (x3, 0.0))
        delta = rng3.uniform(0.2, 1.2)
        ours = integrate_pair_v(e1, e2, ([1.0], [1.0]), delta, MAT)
        ref = oracle(e1, e2, delta)
        qworst = max(qworst, float(np.max(np.abs(ours - ref))))
    e_ok = qworst < 1e-8
    parts.append(f"pair quadrature {qworst:.1e}")

    # (f) marching residual on a full solve
    datum = eb.BoundaryDatum(space_part=lambda x: np.array([0.0, x[0] ** 4]),
                             time_part=lambda t: 1.0 if t >= 0 else 0.0)
    rhs = eb.assemble_rhs_dirichlet(space, tg, datum)
    solu = eb.mot_solve(system, rhs)
    res = mot_residual(system, solu, rhs)
    f_ok = res <= 1e-10
    parts.append(f"MOT residual {res:.1e}")

    ok = a_ok and b_ok and c_ok and d_ok and e_ok and f_ok
    _criterion(9, "property suites", ok, "; ".join(parts))


def test_criterion_10_cone_solver_and_legendre():
    details = []
    worst_res = 0.0
    stable = True
    for omega, poisson in ((0.4, 0.3), (1.2, 0.25), (2.2, 0.35), (3.0, 0.2)):
        prob = ConeExponentProblem(omega, poisson)
        roots = exponent_cone(prob)
        half = exponent_cone(prob, scan_step=5e-4)
        if len(roots) != len(half) or any(abs(a - b) > 1e-8
                                          for a, b in zip(roots, half)):
            stable = False
        for alpha in roots:
            worst_res = max(worst_res, abs(cone_residual(prob, alpha)))
    details.append(f"cone residual {worst_res:.1e}, scan-halving stable {stable}")

    import mpmath

    rng = np.random.default_rng(5)
    lworst = 0.0
    for _ in range(100):
        alpha = float(rng.uniform(0.0, 5.0))
        x = float(rng.uniform(-0.99, 1.0))
        ours = legendre_p(alpha, x)
        ref = float(mpmath.legenp(alpha, 0, x))
        lworst = max(lworst, abs(ours - ref) / max(1.0, abs(ref)))
    details.append(f"Legendre vs arbitrary precision {lworst:.1e}")
    ok = worst_res < 1e-8 and stable and lworst < 1e-10
    _criterion(10, "cone exponent solver and Legendre evaluation", ok,
               "; ".join(details))
