"""Small-distance series of the collinear hypersingular kernel.

For the flat crack on the x-axis (normals (0,1) on both elements) the
hypersingular kernel nu_w restricted to r = (u, 0) decomposes, for
|u| < c_s * d, as

    nu_w_ii(u; d) = A_i / u^2 + sum_k b_{ik} u^{2k} log|u| + sum_k a_{ik} u^{2k}

with the off-diagonal component vanishing identically.  This script expands
the closed form symbolically and emits the coefficient evaluator

    src/ebem2d/_kernel_w_series.py

used by the quadrature to integrate the short-range part exactly (Hadamard
finite part for the u^-2 term) without catastrophic cancellation.
"""

import sympy as sp

from derive_hypersingular_kernel import derive_pieces, R1, R2, D, CP, CS, RHO, NX1, NX2, NE1, NE2

ORDER = 14  # series through u^(ORDER-2)


def collinear_series():
    pieces = derive_pieces()
    u = sp.Symbol("u", positive=True)
    subs = {R1: u, R2: 0, NX1: 0, NX2: 1, NE1: 0, NE2: 1}
    L = sp.Symbol("Lu")
    out = {}
    for comp, (i, j) in (("11", (0, 0)), ("22", (1, 1)), ("12", (0, 1))):
        total = (pieces[("P", i, j)] + pieces[("S", i, j)]).subs(subs)
        total = sp.cancel(sp.together(total))
        print("series", comp)
        s = sp.series(total, u, 0, ORDER).removeO()
        s = sp.expand(s.subs(sp.log(u), L))
        if comp == "12":
            assert sp.simplify(s) == 0, "off-diagonal collinear component must vanish"
            continue
        poly = sp.Poly(sp.expand(s * u**2), u, L)
        amin2 = sp.S(0)
        blog = {}
        apoly = {}
        for (ku, kl), coef in poly.terms():
            # powers of u are shifted by -2 relative to the monomial list
            pw = ku - 2
            if kl == 0:
                if pw == -2:
                    amin2 += coef
                else:
                    assert pw >= 0 and pw % 2 == 0, (comp, pw)
                    apoly[pw // 2] = apoly.get(pw // 2, 0) + coef
            else:
                assert kl == 1 and pw >= 0 and pw % 2 == 0, (comp, pw, kl)
                blog[pw // 2] = blog.get(pw // 2, 0) + coef
        out[comp] = (amin2, blog, apoly)
    return out


def emit(series, path):
    from sympy.printing.pycode import pycode

    nk = (ORDER - 2) // 2 + 1
    exprs = []
    slots = []
    for ci, comp in enumerate(("11", "22")):
        amin2, blog, apoly = series[comp]
        exprs.append(amin2)
        slots.append(("amin2", ci, 0))
        for k in range(nk):
            exprs.append(blog.get(k, sp.S(0)))
            slots.append(("blog", ci, k))
            exprs.append(apoly.get(k, sp.S(0)))
            slots.append(("apoly", ci, k))
    repl, reduced = sp.cse([sp.simplify(e) for e in exprs])

    lines = [
        '"""Generated by tools/derive_collinear_series.py -- do not edit."""',
        "",
        "import numba",
        "import numpy as np",
        "",
        f"N_SERIES = {nk}",
        "",
        "",
        "@numba.njit(cache=True)",
        "def nu_w_collinear_coeffs(d, cp, cs, rho):",
        '    """Series data for nu_w on the axis, valid for |u| < cs*d.',
        "",
        "    Returns (amin2[2], blog[2, N], apoly[2, N]) for components 11, 22:",
        "    nu_w_ii = amin2[i]/u**2 + sum_k blog[i,k] u**(2k) log|u|",
        "              + sum_k apoly[i,k] u**(2k).",
        '    """',
    ]
    for sym, ex in repl:
        lines.append(f"    {sym} = {pycode(ex)}")
    lines.append("    amin2 = np.zeros(2)")
    lines.append(f"    blog = np.zeros((2, {nk}))")
    lines.append(f"    apoly = np.zeros((2, {nk}))")
    for (kind, ci, k), ex in zip(slots, reduced):
        tgt = f"amin2[{ci}]" if kind == "amin2" else f"{kind}[{ci}, {k}]"
        lines.append(f"    {tgt} = {pycode(ex)}")
    lines.append("    return amin2, blog, apoly")
    body = "\n".join(lines)
    body = body.replace("math.log", "np.log").replace("math.sqrt", "np.sqrt")

    with open(path, "w") as f:
        f.write(body + "\n")
    print("wrote", path)


if __name__ == "__main__":
    import os

    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    emit(collinear_series(), os.path.join(root, "src", "ebem2d", "_kernel_w_series.py"))
