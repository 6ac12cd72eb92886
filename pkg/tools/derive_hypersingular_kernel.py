"""Symbolic derivation of the hypersingular time-integrated kernel.

The weakly singular kernel nu_v is the once-in-time integrated 2D
elastodynamic fundamental solution (scaled by 2*pi*rho).  The hypersingular
kernel nu_w used for the Neumann problem is obtained by

  1. integrating nu_v once more in time against the linear-in-time factor,
     I3(r; d) = int_0^d (d - s) nu_v(r; s) ds,
  2. applying the elastic traction operator at the field point x and at the
     integration point xi (normals n_x, n_xi), using that I3 depends on
     x - xi only.

Time antiderivatives are supplied in closed form and verified here by
differentiation.  Running this script regenerates

    src/ebem2d/_kernel_w_gen.py

The generated closed form is validated in the test suite against a
finite-difference traction oracle and against the known static (long-time)
limit of the Neumann problem on a flat arc.
"""

import sympy as sp

R1, R2, D, CP, CS, RHO = sp.symbols("r1 r2 d cp cs rho", positive=True)
NX1, NX2, NE1, NE2 = sp.symbols("nx1 nx2 ne1 ne2", real=True)


def time_integrals(c):
    """J1 = int (d-s) s phi ds, J2 = int (d-s) phihat ds over [r/c, d]."""
    s = sp.Symbol("s", positive=True)
    r = sp.sqrt(R1**2 + R2**2)
    w = c**2 * s**2 - r**2
    phi = sp.sqrt(w)
    lg = sp.log(c * s + phi)

    a1 = w ** sp.Rational(3, 2) / (3 * c**2)
    int_w32 = (
        s * w ** sp.Rational(3, 2) / 4
        - 3 * r**2 * s * phi / 8
        + 3 * r**4 * lg / (8 * c)
    )
    a2 = (s * w ** sp.Rational(3, 2) - int_w32) / (3 * c**2)
    b1 = s * lg - phi / c - s * sp.log(r)
    int_s2_over_phi = s * phi / (2 * c**2) + r**2 * lg / (2 * c**3)
    b2 = s**2 * lg / 2 - c * int_s2_over_phi / 2 - s**2 * sp.log(r) / 2

    # verify the antiderivatives
    assert sp.simplify(sp.diff(a1, s) - s * phi) == 0
    assert sp.simplify(sp.diff(a2, s) - s**2 * phi) == 0
    assert sp.simplify(sp.diff(b1, s) - (lg - sp.log(r))) == 0
    assert sp.simplify(sp.diff(b2, s) - s * (lg - sp.log(r))) == 0

    lower = {s: r / c}
    upper = {s: D}
    j1 = D * (a1.subs(upper) - a1.subs(lower)) - (a2.subs(upper) - a2.subs(lower))
    j2 = D * (b1.subs(upper) - b1.subs(lower)) - (b2.subs(upper) - b2.subs(lower))
    return j1, j2


def hooke(lam, mu, i, h, k, l):
    dlt = lambda a, b: 1 if a == b else 0
    return lam * dlt(i, h) * dlt(k, l) + mu * (
        dlt(i, k) * dlt(h, l) + dlt(i, l) * dlt(h, k)
    )


def derive_pieces():
    lam = RHO * (CP**2 - 2 * CS**2)
    mu = RHO * CS**2
    r = sp.sqrt(R1**2 + R2**2)
    rv = [R1, R2]
    nx = [NX1, NX2]
    ne = [NE1, NE2]

    pieces = {}
    for gamma, c, dev_sign in (("P", CP, 1), ("S", CS, -1)):
        print("time integrals", gamma)
        j1, j2 = time_integrals(c)

        def i3(k, kp):
            a_kk = rv[k] * rv[kp] / r**4 - (1 if k == kp else 0) / (2 * r**2)
            term = dev_sign * a_kk * j1 / c
            if k == kp:
                term += j2 / (2 * c**2)
            return term

        print("second derivatives", gamma)
        d2 = {}
        for k in range(2):
            for kp in range(2):
                base = i3(k, kp)
                for l in range(2):
                    dl = sp.diff(base, rv[l])
                    for lp in range(2):
                        d2[(k, kp, l, lp)] = sp.diff(dl, rv[lp])

        for i in range(2):
            for j in range(2):
                total = sp.S(0)
                for h in range(2):
                    for k in range(2):
                        for l in range(2):
                            c1 = hooke(lam, mu, i, h, k, l)
                            if c1 == 0:
                                continue
                            for hp in range(2):
                                for kp in range(2):
                                    for lp in range(2):
                                        c2 = hooke(lam, mu, j, hp, kp, lp)
                                        if c2 == 0:
                                            continue
                                        # d/dxi_lp = -d/dr_lp
                                        total -= c1 * c2 * d2[(k, kp, l, lp)] * nx[h] * ne[hp]
                pieces[(gamma, i, j)] = total
        print("done", gamma)
    return pieces


def emit(pieces, path):
    from sympy.printing.pycode import pycode

    exprs = []
    names = []
    for g in ("P", "S"):
        for i in range(2):
            for j in range(2):
                exprs.append(pieces[(g, i, j)])
                names.append((0 if g == "P" else 1, i, j))
    print("cse...")
    repl, reduced = sp.cse(exprs)

    lines = [
        '"""Generated by tools/derive_hypersingular_kernel.py -- do not edit."""',
        "",
        "import numba",
        "import numpy as np",
        "",
        "",
        "@numba.njit(cache=True)",
        "def nu_w_pieces(r1, r2, d, cp, cs, rho, nx1, nx2, ne1, ne2):",
        '    """P- and S-gated pieces of the hypersingular kernel (ungated closed forms).',
        "",
        "    Returns a 2x2x2 array: [gamma, i, j] with gamma 0 = P piece, 1 = S piece.",
        "    The caller applies the wave-front Heaviside gating.",
        '    """',
    ]
    for sym, ex in repl:
        lines.append(f"    {sym} = {pycode(ex)}")
    lines.append("    out = np.empty((2, 2, 2))")
    for (g, i, j), ex in zip(names, reduced):
        lines.append(f"    out[{g}, {i}, {j}] = {pycode(ex)}")
    lines.append("    return out")
    body = "\n".join(lines)
    body = body.replace("math.log", "np.log").replace("math.sqrt", "np.sqrt")
    body = body.replace("import math\n", "")

    with open(path, "w") as f:
        f.write(body + "\n")
    print("wrote", path)


if __name__ == "__main__":
    emit(derive_pieces(), "src/ebem2d/_kernel_w_gen.py")
