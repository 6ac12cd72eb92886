"""Generated by tools/derive_collinear_series.py -- do not edit."""

import numba
import numpy as np

N_SERIES = 7


@numba.njit(cache=True)
def nu_w_collinear_coeffs(d, cp, cs, rho):
    """Series data for nu_w on the axis, valid for |u| < cs*d.

    Returns (amin2[2], blog[2, N], apoly[2, N]) for components 11, 22:
    nu_w_ii = amin2[i]/u**2 + sum_k blog[i,k] u**(2k) log|u|
              + sum_k apoly[i,k] u**(2k).
    """
    x0 = cp**2
    x1 = cs**2
    x2 = d**2
    x3 = rho**2
    x4 = x1*x2*x3*(x0 - x1)/x0
    x5 = cp**4
    x6 = cs**4
    x7 = x3/x5
    x8 = (1/2)*x7
    x9 = d**4
    x10 = 4*x6
    x11 = (1/8)*x7
    x12 = cp**6
    x13 = cs**6
    x14 = (1/8)*x3/(x1*x12*x2)
    x15 = cp**8
    x16 = cs**8
    x17 = (1/128)*x3/(x15*x6*x9)
    x18 = cp**10
    x19 = cs**10
    x20 = (1/384)*x3/(d**6*x13*x18)
    x21 = cp**12
    x22 = cs**12
    x23 = (7/2048)*x3/(d**8*x16*x21)
    x24 = cp**14
    x25 = cs**14
    x26 = (3/5120)*x3/(d**10*x19*x24)
    x27 = cp**16
    x28 = cs**16
    x29 = d**12
    x30 = (11/32768)*x3/(x22*x27*x29)
    x31 = 4*x0
    x32 = 4096*x29
    amin2 = np.zeros(2)
    blog = np.zeros((2, 7))
    apoly = np.zeros((2, 7))
    amin2[0] = x4
    blog[0, 0] = x8*(x5 + x6)
    apoly[0, 0] = x11*(-x5*(np.log(16*x6*x9) + 1) + x6 - np.log(2**x10*cp**x10*d**x10))
    blog[0, 1] = 0
    apoly[0, 1] = x14*(x12 + x13)
    blog[0, 2] = 0
    apoly[0, 2] = x17*(7*x15 + 5*x16)
    blog[0, 3] = 0
    apoly[0, 3] = x20*(13*x18 + 7*x19)
    blog[0, 4] = 0
    apoly[0, 4] = x23*(7*x21 + 3*x22)
    blog[0, 5] = 0
    apoly[0, 5] = x26*(31*x24 + 11*x25)
    blog[0, 6] = 0
    apoly[0, 6] = x30*(43*x27 + 13*x28)
    amin2[1] = x4
    blog[1, 0] = x8*(-x1*x31 + 3*x5 + 3*x6)
    apoly[1, 0] = x11*(8*x0*x1*(np.log(x2*x31) - 1) + x5*(1 - np.log(x15*x32*x6)) + x6*(7 - np.log(x21*x32)))
    blog[1, 1] = 0
    apoly[1, 1] = x14*(-6*x0*x6 + 2*x1*x5 + x12 + 5*x13)
    blog[1, 2] = 0
    apoly[1, 2] = x17*(-40*x0*x13 + 5*x15 + 35*x16 + 12*x5*x6)
    blog[1, 3] = 0
    apoly[1, 3] = x20*(-70*x0*x16 + 20*x13*x5 + 7*x18 + 63*x19)
    blog[1, 4] = 0
    apoly[1, 4] = x23*(-36*x0*x19 + 10*x16*x5 + 3*x21 + 33*x22)
    blog[1, 5] = 0
    apoly[1, 5] = x26*(-154*x0*x22 + 42*x19*x5 + 11*x24 + 143*x25)
    blog[1, 6] = 0
    apoly[1, 6] = x30*(-208*x0*x25 + 56*x22*x5 + 13*x27 + 195*x28)
    return amin2, blog, apoly
