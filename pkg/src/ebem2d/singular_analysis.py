"""Corner singular exponents and empirical power-law fitting.

The opening angle omega is the angle of the material wedge at the corner
(2*pi for a crack tip).  Plane-strain exponents solve

    sin^2(nu * omega) = (nu/kappa * sin omega)^2,

kappa = kolosov constant (Dirichlet) or 1 (Neumann); the smallest positive
root governs the strength u ~ r^nu of the corner singularity.  The squared
equation merges the +- branches; roots are located on the two linear
branches sin(nu w) -+ (nu/kappa) sin w separately, which keeps every root a
sign change (the squared form has double roots, e.g. at omega = 2*pi).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

SCAN_STEP = 1e-3
ROOT_CAP = 2.0


@dataclass(frozen=True)
class ExponentProblem:
    opening_angle: float  # omega in (0, 2*pi]
    bc: str  # "dirichlet" | "neumann" | "wave_dirichlet" | "wave_neumann"
    kolosov: float = 5.0 / 3.0

    def __post_init__(self):
        if not (0.0 < self.opening_angle <= 2.0 * math.pi):
            raise ValueError("opening angle must lie in (0, 2*pi]")
        if self.bc not in ("dirichlet", "neumann", "wave_dirichlet",
                          "wave_neumann"):
            raise ValueError(f"unknown bc {self.bc!r}")
        if self.kolosov <= 1.0:
            raise ValueError("kolosov constant must exceed 1")


@dataclass(frozen=True)
class ConeExponentProblem:
    opening_angle: float  # omega in (0, pi)
    poisson: float  # in (0, 1/2)

    def __post_init__(self):
        if not (0.0 < self.opening_angle < math.pi):
            raise ValueError("cone opening angle must lie in (0, pi)")
        if not (0.0 < self.poisson < 0.5):
            raise ValueError("poisson ratio must lie in (0, 1/2)")


def _bisect(f, a, b, fa, fb, tol):
    for _ in range(200):
        m = 0.5 * (a + b)
        if b - a < tol:
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0.0) != (fm < 0.0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def _scan_roots(f, lo, hi, step, tol):
    roots = []
    a = lo
    fa = f(a)
    n = int(math.ceil((hi - lo) / step))
    for k in range(1, n + 1):
        b = min(lo + k * step, hi)
        fb = f(b)
        if fa == 0.0:
            roots.append(a)
        elif (fa < 0.0) != (fb < 0.0):
            roots.append(_bisect(f, a, b, fa, fb, tol))
        a, fa = b, fb
    if fa == 0.0:
        roots.append(a)
    return roots


def exponent_elastic(problem: ExponentProblem) -> float:
    """Smallest positive singular exponent of the plane-strain corner."""
    w = problem.opening_angle
    if problem.bc in ("wave_dirichlet", "wave_neumann"):
        return exponent_wave(w, 1)
    kappa = problem.kolosov if problem.bc == "dirichlet" else 1.0
    roots = exponent_elastic_all(problem)
    if not roots:
        raise ValueError(
            f"no exponent in (0, {ROOT_CAP}] for omega={w!r}, bc={problem.bc!r}"
            f" (scan step {SCAN_STEP}, kappa={kappa})")
    return roots[0]


def exponent_elastic_all(problem: ExponentProblem) -> list[float]:
    """All roots in (0, ROOT_CAP], ascending."""
    w = problem.opening_angle
    kappa = problem.kolosov if problem.bc == "dirichlet" else 1.0
    sw = math.sin(w)
    roots = []
    for sgn in (-1.0, 1.0):
        f = lambda nu: math.sin(nu * w) + sgn * nu / kappa * sw
        roots.extend(_scan_roots(f, 1e-6, ROOT_CAP, SCAN_STEP, 1e-12))
    roots = sorted(r for r in roots if r > 1e-6)
    dedup = []
    for r in roots:
        if not dedup or r - dedup[-1] > 1e-9:
            dedup.append(r)
    return dedup


def exponent_wave(omega: float, k: int) -> float:
    """Scalar wave-equation corner exponents nu_k = k*pi/omega."""
    if not (0.0 < omega <= 2.0 * math.pi):
        raise ValueError("omega out of range")
    if k < 0:
        raise ValueError("k must be >= 0")
    return k * math.pi / omega


def exponent_asymptotics(omega: float, k_star: float, regime: str) -> float:
    """Closed-form limits of the plane-strain Dirichlet exponent."""
    if regime == "small_angle":
        # c solves sin(c)/c = 1/k_star on (0, pi)
        f = lambda c: math.sin(c) / c - 1.0 / k_star
        c = _bisect(f, 1e-9, math.pi - 1e-9, f(1e-9), f(math.pi - 1e-9), 1e-14)
        return c / omega
    if regime == "near_2pi":
        # expanding sin(nu*omega) = +-(nu/k)sin(omega) about nu = 1/2,
        # omega = 2*pi - eps; the smaller branch carries the minus sign
        eps = 2.0 * math.pi - omega
        return 0.5 + eps / (4.0 * math.pi) * (1.0 - 1.0 / k_star)
    raise ValueError(f"unknown regime {regime!r}")


def legendre_p(alpha: float, x: float, tol: float = 1e-14,
               max_terms: int = 200000) -> float:
    """Legendre function of the first kind P_alpha(x) for real degree,
    x in (-1, 1], by the hypergeometric series
    2F1(-alpha, alpha+1; 1; (1-x)/2)."""
    if x <= -1.0 or x > 1.0:
        raise ValueError("x must lie in (-1, 1]")
    z = 0.5 * (1.0 - x)
    if z == 0.0:
        return 1.0
    term = 1.0
    total = 1.0
    for n in range(max_terms):
        term *= (n - alpha) * (n + alpha + 1.0) / ((n + 1.0) ** 2) * z
        total += term
        if abs(term) < tol * max(1.0, abs(total)) and n > 4:
            return total
    raise ArithmeticError("legendre series did not converge")


def _cone_equation(alpha: float, omega: float, nu: float) -> float:
    x = math.cos(omega)
    pa = legendre_p(alpha, x)
    pa1 = legendre_p(alpha + 1.0, x)
    return -(alpha + 1.0) / math.sin(omega) * (
        pa * pa * x * (alpha + 4.0 * nu - 3.0)
        + pa * pa1 * (3.0 - 4.0 * nu - x * x * (2.0 * alpha + 1.0))
        + pa1 * pa1 * x * (alpha + 1.0))


def exponent_cone(problem: ConeExponentProblem, scan_step: float = SCAN_STEP,
                  cap: float = ROOT_CAP) -> list[float]:
    """All real roots alpha in (0, cap] of the rotationally symmetric
    Dirichlet cone determinant, by sign-scan plus bisection."""
    f = lambda a: _cone_equation(a, problem.opening_angle, problem.poisson)
    roots = _scan_roots(f, 1e-6, cap, scan_step, 1e-10)
    check = _scan_roots(f, 1e-6, cap, scan_step / 2.0, 1e-10)
    if len(check) != len(roots):
        warnings.warn(
            f"cone root count changed under scan halving "
            f"({len(roots)} -> {len(check)}); possible double roots",
            RuntimeWarning)
        roots = check
    return roots


def cone_residual(problem: ConeExponentProblem, alpha: float) -> float:
    return _cone_equation(alpha, problem.opening_angle, problem.poisson)


def elastic_residual(problem: ExponentProblem, nu: float) -> float:
    """Residual of the squared exponent equation at nu."""
    w = problem.opening_angle
    kappa = problem.kolosov if problem.bc == "dirichlet" else 1.0
    return math.sin(nu * w) ** 2 - (nu / kappa * math.sin(w)) ** 2


def fit_power_law(samples) -> tuple[float, float, float]:
    """Least-squares fit value ~ prefactor * r^exponent in log-log
    coordinates; returns (exponent, prefactor, rms residual)."""
    samples = [(float(r), float(v)) for r, v in samples]
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    if any(r <= 0.0 or v == 0.0 for r, v in samples):
        raise ValueError("need r > 0 and nonzero values")
    if any(v < 0.0 for _, v in samples) and any(v > 0.0 for _, v in samples):
        warnings.warn("sign changes in samples; fitting absolute values",
                      RuntimeWarning)
    lr = np.log([r for r, _ in samples])
    lv = np.log([abs(v) for _, v in samples])
    A = np.stack([lr, np.ones_like(lr)], axis=1)
    (slope, intercept), res, _, _ = np.linalg.lstsq(A, lv, rcond=None)
    fitted = A @ np.array([slope, intercept])
    rms = float(np.sqrt(np.mean((fitted - lv) ** 2)))
    return float(slope), float(math.exp(intercept)), rms


def write_exponent_curve(path: str, omegas, kolosov: float) -> None:
    """CSV of exponent vs angle: omega, exterior-corner and interior-corner
    Dirichlet exponents (opening angles omega and 2*pi - omega)."""
    with open(path, "w") as f:
        f.write("omega,nu_exterior,nu_interior\n")
        for w in omegas:
            # very small openings push the exponent beyond the root cap;
            # report those points as nan rather than aborting the sweep
            vals = []
            for angle in (2.0 * math.pi - w, w):
                try:
                    vals.append(exponent_elastic(
                        ExponentProblem(angle, "dirichlet", kolosov)))
                except ValueError:
                    vals.append(math.nan)
            f.write(f"{w:.12g},{vals[0]:.12g},{vals[1]:.12g}\n")
