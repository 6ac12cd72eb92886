"""Generated by tools/derive_hypersingular_kernel.py -- do not edit."""

import numba
import numpy as np


@numba.njit(cache=True)
def nu_w_pieces(r1, r2, d, cp, cs, rho, nx1, nx2, ne1, ne2):
    """P- and S-gated pieces of the hypersingular kernel (ungated closed forms).

    Returns a 2x2x2 array: [gamma, i, j] with gamma 0 = P piece, 1 = S piece.
    The caller applies the wave-front Heaviside gating.
    """
    x0 = rho**2
    x1 = ne1*x0
    x2 = cs**2
    x3 = nx2*x2
    x4 = x1*x3
    x5 = cp**2
    x6 = 2*x2
    x7 = x5 - x6
    x8 = 1/cp
    x9 = cp**(-3)
    x10 = r1**2
    x11 = r2**2
    x12 = x10 + x11
    x13 = np.log(np.sqrt(x12))
    x14 = x13*x9
    x15 = x12**2
    x16 = (1/8)*x15
    x17 = 1/x5
    x18 = d**2
    x19 = -x12 + x18*x5
    x20 = x19**(3/2)
    x21 = (3/4)*d
    x22 = np.sqrt(x19)
    x23 = d*x22
    x24 = 3*x10
    x25 = 3*x11
    x26 = (1/8)*x24 + (1/8)*x25
    x27 = cp*d + x22
    x28 = np.log(x27)
    x29 = x28*x8
    x30 = (3/8)*x15
    x31 = (1/3)*x17
    x32 = x8*((1/3)*d*x17*x20 - x14*x16 - x31*(x20*x21 + x23*x26 - x29*x30))
    x33 = x12**(-3)
    x34 = r1*r2
    x35 = x33*x34
    x36 = -12*x32*x35
    x37 = r2**3
    x38 = x12**(-4)
    x39 = 24*x38
    x40 = r1*x37*x39
    x41 = 1/x15
    x42 = 2*x41
    x43 = r1*x42
    x44 = (1/8)*x12
    x45 = x44*x9
    x46 = (1/2)*x12
    x47 = x14*x46
    x48 = x17*x23
    x49 = (3/2)*x23
    x50 = 1/x22
    x51 = d*x50
    x52 = x26*x51
    x53 = (3/2)*x12
    x54 = x29*x53
    x55 = 1/x27
    x56 = x8*(-r2*x45 - r2*x47 - r2*x48 - x31*((3/8)*r2*x15*x50*x55*x8 - r2*x49 - r2*x52 - r2*x54))
    x57 = 8*x33
    x58 = 1/x20
    x59 = d*x11
    x60 = x58*x59
    x61 = 1/x19
    x62 = x27**(-2)
    x63 = -3/8*x15*x50*x55*x8 + x49 + x52 + x54
    x64 = x11*x9
    x65 = x45 + x47 + x48
    x66 = x8*(d*x11*x17*x50 - x13*x64 - x31*((3/4)*d*x11*x50 + 3*x11*x12*x50*x55*x8 + (3/8)*x11*x15*x55*x58*x8 + (3/8)*x11*x15*x61*x62*x8 - x25*x29 - x26*x60 - x63) - 3/4*x64 - x65)
    x67 = r1*x41
    x68 = r2*x67
    x69 = -r1*x11*x56*x57 + x32*x40 + x36 + x43*x56 + x66*x68
    x70 = x69*x7
    x71 = ne2*x0
    x72 = nx1*x71
    x73 = x2*x72
    x74 = r1**3
    x75 = r2*x39*x74
    x76 = r2*x42
    x77 = x8*(-r1*x45 - r1*x47 - r1*x48 - x31*((3/8)*r1*x15*x50*x55*x8 - r1*x49 - r1*x52 - r1*x54))
    x78 = d*x10
    x79 = x58*x78
    x80 = x10*x9
    x81 = x8*(d*x10*x17*x50 - x13*x80 - x31*((3/4)*d*x10*x50 + 3*x10*x12*x50*x55*x8 + (3/8)*x10*x15*x55*x58*x8 + (3/8)*x10*x15*x61*x62*x8 - x24*x29 - x26*x79 - x63) - x65 - 3/4*x80)
    x82 = -r2*x10*x57*x77 + x32*x75 + x36 + x68*x81 + x76*x77
    x83 = rho*x7
    x84 = rho*x6 + x83
    x85 = rho*x84
    x86 = ne1*x85
    x87 = x82*x86
    x88 = nx1*x2
    x89 = ne2*x85
    x90 = x88*x89
    x91 = 2*x10
    x92 = 2*x11
    x93 = x91 + x92
    x94 = 32/x93**3
    x95 = x34*x94 + 8*x35
    x96 = -24*r1*x37*x38 + x95
    x97 = 4*x33
    x98 = x11*x97
    x99 = r1*x98
    x100 = 4/x93**2
    x101 = r1*x100
    x102 = -x101 + x99
    x103 = -x102
    x104 = r2*x100
    x105 = x104 - x37*x97 + x76
    x106 = x11*x41
    x107 = -1/x93
    x108 = x106 + x107
    x109 = (3/4)*x34
    x110 = 3*x34
    x111 = d*x34
    x112 = x111*x58
    x113 = x61*x62
    x114 = x30*x34
    x115 = x8*(d*r1*r2*x17*x50 - x109*x9 - x14*x34 - x31*(x110*x12*x50*x55*x8 - x110*x29 - x112*x26 + x113*x114*x8 + x21*x34*x50 + x30*x34*x55*x58*x8))
    x116 = 1/x12
    x117 = (1/2)*x17
    x118 = x116*x117
    x119 = -x18*x68
    x120 = (1/2)*x18
    x121 = x120*x34
    x122 = x55*x58
    x123 = -2*d*r1*r2*x41
    x124 = d*x55
    x125 = x124*x58
    x126 = x50*x55
    x127 = x126*x9
    x128 = 2*x34
    x129 = x34*x46
    x130 = x129*x9
    x131 = (1/2)*cp
    x132 = x117*(d*(r1*r2*x58*x8 - x111*x113 - x123 - x125*x34) + x113*x121 - x118*x34 + x119 + x121*x122 + x131*(-x112*x117 - x113*x130 - x122*x130 - x127*x128))
    x133 = x103*x56 + x105*x77 + x108*x115 + x132 - x32*x96
    x134 = x133*x7
    x135 = -24*r2*x38*x74 + x95
    x136 = x10*x97
    x137 = r2*x136
    x138 = -x104 + x137
    x139 = -x138
    x140 = x101 + x43 - x74*x97
    x141 = x10*x41
    x142 = x107 + x141
    x143 = x115*x142 + x132 - x135*x32 + x139*x77 + x140*x56
    x144 = x143*x3
    x145 = x143*x88
    x146 = -x11*x94
    x147 = x10*x11*x39
    x148 = x100 + x147
    x149 = -x136 + x146 + x148
    x150 = 2*x56
    x151 = x124*x50 - x50*x8
    x152 = d*x116
    x153 = -2*d*x11*x41 + x152
    x154 = x46*x64
    x155 = x117*x51 + x127*x46 - x28*x9
    x156 = x11*x120
    x157 = -x117*x13 + x120*x126 - 1/4*x17
    x158 = x116*x120
    x159 = -x106*x18 + x158
    x160 = x117*(d*(-x11*x125 + x11*x58*x8 - x113*x59 - x151 - x153) - x11*x118 + x113*x156 + x122*x156 + x131*(-x113*x154 - x117*x60 - x122*x154 - x127*x92 - x155) + x157 + x159)
    x161 = x139*x150 + x142*x66 + x149*x32 + x160
    x162 = cs**4
    x163 = nx2*x162
    x164 = x161*x163
    x165 = -x10*x94
    x166 = x148 + x165 - x98
    x167 = 2*x77
    x168 = -2*d*x10*x41 + x152
    x169 = x46*x80
    x170 = x10*x120
    x171 = -x141*x18 + x158
    x172 = x117*(d*(-x10*x125 + x10*x58*x8 - x113*x78 - x151 - x168) - x10*x118 + x113*x170 + x122*x170 + x131*(-x113*x169 - x117*x79 - x122*x169 - x127*x91 - x155) + x157 + x171)
    x173 = x103*x167 + x108*x81 + x166*x32 + x172
    x174 = x163*x173
    x175 = 20*x33
    x176 = x100 + x42
    x177 = r2**4*x39 - x11*x175 + x146 + x176
    x178 = x105*x150 + x108*x66 + x160 + x177*x32
    x179 = nx1*x178
    x180 = x7**2
    x181 = x1*x180
    x182 = x84**2
    x183 = nx1*x182
    x184 = r1**4*x39 - x10*x175 + x165 + x176
    x185 = x140*x167 + x142*x81 + x172 + x184*x32
    x186 = ne1*x185
    x187 = x163*x71
    x188 = r2*x41
    x189 = x115*x68 - x136*x32 - x137*x56 + x147*x32 + x188*x56 + x32*x41 - x32*x98 + x67*x77 - x77*x99
    x190 = 2*x189
    x191 = ne1*x189
    x192 = x83*x84
    x193 = 2*nx1*x192
    x194 = ne2*x183
    x195 = x180*x72
    x196 = x0*x191
    x197 = 2*x196
    x198 = ne2*x192
    x199 = nx1*x198
    x200 = nx1*x1
    x201 = x2*x200
    x202 = x3*x89
    x203 = x7*x71
    x204 = x203*x3
    x205 = x133*x202 + x134*x201 + x144*x203 + x145*x86 + x201*x70 + x202*x69 + x204*x82 + x87*x88
    x206 = nx2*x182
    x207 = nx2*x180
    x208 = x162*x72
    x209 = nx2*x192
    x210 = ne1*x209
    x211 = x7*x82
    x212 = x3*x86
    x213 = x7*x73
    x214 = x162*x200
    x215 = x207*x71
    x216 = ne2*x206
    x217 = nx1*x162
    x218 = nx2*x198
    x219 = 1/cs
    x220 = cs**(-3)
    x221 = x13*x220
    x222 = 1/x2
    x223 = -x12 + x18*x2
    x224 = x223**(3/2)
    x225 = np.sqrt(x223)
    x226 = d*x225
    x227 = cs*d + x225
    x228 = np.log(x227)
    x229 = x219*x228
    x230 = (1/3)*x222
    x231 = (1/3)*d*x222*x224 - x16*x221 - x230*(x21*x224 + x226*x26 - x229*x30)
    x232 = -12*r1*r2*x219*x231*x33
    x233 = x219*x231
    x234 = x220*x44
    x235 = x221*x46
    x236 = x222*x226
    x237 = (3/2)*x226
    x238 = 1/x225
    x239 = d*x238
    x240 = x239*x26
    x241 = x229*x53
    x242 = 1/x227
    x243 = -r2*x234 - r2*x235 - r2*x236 - x230*((3/8)*r2*x15*x219*x238*x242 - r2*x237 - r2*x240 - r2*x241)
    x244 = x219*x243
    x245 = 1/x224
    x246 = x245*x59
    x247 = 1/x223
    x248 = x227**(-2)
    x249 = -3/8*x15*x219*x238*x242 + x237 + x240 + x241
    x250 = x11*x220
    x251 = x234 + x235 + x236
    x252 = x219*(d*x11*x222*x238 - x13*x250 - x230*((3/4)*d*x11*x238 + 3*x11*x12*x219*x238*x242 + (3/8)*x11*x15*x219*x242*x245 + (3/8)*x11*x15*x219*x247*x248 - x229*x25 - x246*x26 - x249) - 3/4*x250 - x251)
    x253 = 8*r1*x11*x219*x243*x33 - x232 - x233*x40 - x244*x43 - x252*x68
    x254 = x4*x7
    x255 = -r1*x234 - r1*x235 - r1*x236 - x230*((3/8)*r1*x15*x219*x238*x242 - r1*x237 - r1*x240 - r1*x241)
    x256 = x219*x255
    x257 = x245*x78
    x258 = x10*x220
    x259 = x219*(d*x10*x222*x238 - x13*x258 - x230*((3/4)*d*x10*x238 + 3*x10*x12*x219*x238*x242 + (3/8)*x10*x15*x219*x242*x245 + (3/8)*x10*x15*x219*x247*x248 - x229*x24 - x249 - x257*x26) - x251 - 3/4*x258)
    x260 = 8*r2*x10*x219*x255*x33 - x232 - x233*x75 - x256*x76 - x259*x68
    x261 = -x105
    x262 = -x108
    x263 = x111*x245
    x264 = x247*x248
    x265 = x219*(d*r1*r2*x222*x238 - x109*x220 - x221*x34 - x230*(x110*x12*x219*x238*x242 - x110*x229 + x114*x219*x264 + x21*x238*x34 + x219*x242*x245*x30*x34 - x26*x263))
    x266 = (1/2)*x222
    x267 = x116*x266
    x268 = x242*x245
    x269 = d*x242
    x270 = x245*x269
    x271 = x238*x242
    x272 = x220*x271
    x273 = x129*x220
    x274 = (1/2)*cs
    x275 = x266*(d*(r1*r2*x219*x245 - x111*x264 - x123 - x270*x34) + x119 + x121*x264 + x121*x268 - x267*x34 + x274*(-x128*x272 - x263*x266 - x264*x273 - x268*x273))
    x276 = x102*x244 + x233*x96 + x256*x261 + x262*x265 + x275
    x277 = -x140
    x278 = -x142
    x279 = x135*x233 + x138*x256 + x244*x277 + x265*x278 + x275
    x280 = 2*x244
    x281 = -x219*x238 + x238*x269
    x282 = x250*x46
    x283 = -x220*x228 + x239*x266 + x272*x46
    x284 = x120*x271 - x13*x266 - 1/4*x222
    x285 = x266*(d*(x11*x219*x245 - x11*x270 - x153 - x264*x59 - x281) - x11*x267 + x156*x264 + x156*x268 + x159 + x274*(-x246*x266 - x264*x282 - x268*x282 - x272*x92 - x283) + x284)
    x286 = x138*x280 - x149*x233 + x252*x278 + x285
    x287 = 2*x256
    x288 = x258*x46
    x289 = x266*(d*(x10*x219*x245 - x10*x270 - x168 - x264*x78 - x281) - x10*x267 + x170*x264 + x170*x268 + x171 + x274*(-x257*x266 - x264*x288 - x268*x288 - x272*x91 - x283) + x284)
    x290 = x102*x287 - x166*x233 + x259*x262 + x289
    x291 = -x177*x233 + x252*x262 + x261*x280 + x285
    x292 = nx1*x291
    x293 = -x184*x233 + x259*x278 + x277*x287 + x289
    x294 = ne1*x293
    x295 = 4*r1*x11*x219*x255*x33 + 4*r2*x10*x219*x243*x33 + 4*x10*x219*x231*x33 + 4*x11*x219*x231*x33 - x147*x233 - x188*x244 - x233*x41 - x256*x67 - x265*x68
    x296 = 2*x295
    x297 = ne1*x295
    x298 = x1*x163
    x299 = x0*x297
    x300 = 2*x299
    x301 = x86*x88
    x302 = x201*x7
    x303 = x202*x253 + x202*x276 + x204*x260 + x204*x279 + x253*x302 + x260*x301 + x276*x302 + x279*x301
    out = np.empty((2, 2, 2))
    out[0, 0, 0] = -x134*x4 - x134*x73 - x144*x86 - x145*x89 - x164*x71 - x174*x71 - x179*x181 - x183*x186 - x187*x190 - x191*x193 - x3*x87 - x4*x70 - x70*x73 - x82*x90
    out[0, 0, 1] = -x1*x164 - x1*x174 - x163*x197 - x179*x198 - x185*x199 - x189*x194 - x189*x195 - x205
    out[0, 1, 0] = -x161*x208 - x173*x208 - x178*x210 - x186*x209 - x190*x208 - x191*x206 - x196*x207 - x205
    out[0, 1, 1] = -x1*x144*x7 - x133*x212 - x133*x90 - x143*x213 - x161*x214 - x173*x214 - x178*x216 - x185*x215 - x190*x218 - x197*x217 - x211*x4 - x211*x73 - x212*x69 - x69*x90
    out[1, 0, 0] = -x181*x292 - x183*x294 - x187*x286 - x187*x290 - x187*x296 - x193*x297 - x212*x260 - x212*x279 - x213*x253 - x213*x276 - x253*x254 - x254*x276 - x260*x90 - x279*x90
    out[1, 0, 1] = -x163*x300 - x194*x295 - x195*x295 - x198*x292 - x199*x293 - x286*x298 - x290*x298 - x303
    out[1, 1, 0] = -x206*x297 - x207*x299 - x208*x286 - x208*x290 - x208*x296 - x209*x294 - x210*x291 - x303
    out[1, 1, 1] = -x212*x253 - x212*x276 - x213*x260 - x213*x279 - x214*x286 - x214*x290 - x215*x293 - x216*x291 - x217*x300 - x218*x296 - x253*x90 - x254*x260 - x254*x279 - x276*x90
    return out
