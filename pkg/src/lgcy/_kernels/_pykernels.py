"""Reference implementations of the hot loops.

Polynomials are dicts ``{packed_monomial: coefficient}``; packing makes
monomial multiplication a single integer addition.  Sparse matrices are
dicts ``{row: {col: poly}}``.
"""

from __future__ import annotations

import cmath
import math

# ---------------------------------------------------------------- polynomials


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def poly_addmul_into(acc: dict, a: dict, b: dict) -> None:
    """acc += a*b in place, dropping cancelled terms."""
    get = acc.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                acc[k] = v
            else:
                del acc[k]


def sparse_matmul(a_rows: dict, b_rows: dict, rows=None) -> dict:
    """Product of sparse polynomial matrices, optionally only some rows."""
    out: dict = {}
    it = a_rows.items() if rows is None else ((i, a_rows.get(i, {})) for i in rows)
    for i, row in it:
        acc: dict = {}
        for j, a in row.items():
            brow = b_rows.get(j)
            if not brow:
                continue
            for k, b in brow.items():
                cell = acc.get(k)
                if cell is None:
                    cell = acc[k] = {}
                poly_addmul_into(cell, a, b)
        out[i] = {k: v for k, v in acc.items() if v}
    return out


# ---------------------------------------------------------------- special functions

# B_{2k}/(2k(2k-1)) for the Stirling series of log Gamma
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)
# Bernoulli numbers B_2 .. B_20
_BERN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT = 16.0


def loggamma_derivs(z: complex) -> tuple[complex, complex, complex, complex]:
    """(log Gamma(z) mod 2 pi i, psi(z), psi'(z), psi''(z)).

    Shifts z upward until Re z >= 16, then uses the asymptotic series.
    Only exp of the first component is meaningful.
    """
    z = complex(z)
    lg_shift = 0j
    p0 = 0j
    p1 = 0j
    p2 = 0j
    while z.real < _SHIFT:
        if z == 0 or (z.imag == 0 and z.real <= 0 and z.real == int(z.real)):
            raise ValueError("Gamma has a pole at a non-positive integer")
        inv = 1.0 / z
        lg_shift += cmath.log(z)
        p0 -= inv
        inv2 = inv * inv
        p1 += inv2
        p2 -= 2.0 * inv2 * inv
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    logz = cmath.log(z)
    # log Gamma
    s = 0j
    w = inv
    for c in _STIRLING:
        s += c * w
        w *= inv2
    lg = (z - 0.5) * logz - z + _HALF_LOG_2PI + s
    # psi = log z - 1/(2z) - sum B_2k/(2k z^2k)
    s0 = 0j
    w = inv2
    for k, b in enumerate(_BERN, start=1):
        s0 += b / (2 * k) * w
        w *= inv2
    psi0 = logz - 0.5 * inv - s0
    # psi' = 1/z + 1/(2z^2) + sum B_2k / z^(2k+1)
    s1 = 0j
    w = inv2 * inv
    for b in _BERN:
        s1 += b * w
        w *= inv2
    psi1 = inv + 0.5 * inv2 + s1
    # psi'' = -1/z^2 - 1/z^3 - sum (2k+1) B_2k / z^(2k+2)
    s2 = 0j
    w = inv2 * inv2
    for k, b in enumerate(_BERN, start=1):
        s2 += (2 * k + 1) * b * w
        w *= inv2
    psi2 = -inv2 - inv2 * inv - s2
    return lg - lg_shift, psi0 + p0, psi1 + p1, psi2 + p2


def log_gamma_nilpotent(z0: complex, eps: tuple) -> list[complex]:
    """Coefficients of log Gamma(z0 + e) for nilpotent e with e^4 = 0.

    ``eps`` holds (e1, e2, e3), the p, p^2, p^3 coefficients of e.
    """
    lg, d0, d1, d2 = loggamma_derivs(z0)
    e1, e2, e3 = eps
    # e^2 and e^3 truncated at p^4
    f2 = e1 * e1
    f3 = 2.0 * e1 * e2
    g3 = e1 * e1 * e1
    return [
        lg,
        d0 * e1,
        d0 * e2 + 0.5 * d1 * f2,
        d0 * e3 + 0.5 * d1 * f3 + d2 * g3 / 6.0,
    ]


def nil_exp(c: list) -> list[complex]:
    """exp of c0 + c1 p + c2 p^2 + c3 p^3."""
    e0 = cmath.exp(c[0])
    c1, c2, c3 = c[1], c[2], c[3]
    return [
        e0,
        e0 * c1,
        e0 * (c2 + 0.5 * c1 * c1),
        e0 * (c3 + c1 * c2 + c1 * c1 * c1 / 6.0),
    ]


_TWO_PI_I = 2j * math.pi


def mb_integrand(s: complex, log_v: complex, l: int, z: complex = 1.0) -> list[complex]:
    """p-coefficients of the Mellin-Barnes integrand F_l(s).

    F_l(s) = z e^{(P+s) log v} Gamma(3P+3s+1)^2 / Gamma(P+s+1)^6
             * pi/sin(pi s) * e^{-(2l-1) pi i s},  P = p/(2 pi i).
    """
    s = complex(s)
    a = 1.0 / _TWO_PI_I
    g3 = log_gamma_nilpotent(3.0 * s + 1.0, (3.0 * a, 0.0, 0.0))
    g1 = log_gamma_nilpotent(s + 1.0, (a, 0.0, 0.0))
    sin_ps = cmath.sin(math.pi * s)
    lead = (
        s * log_v
        + 2.0 * g3[0]
        - 6.0 * g1[0]
        + cmath.log(math.pi / sin_ps)
        - (2 * l - 1) * math.pi * 1j * s
    )
    logs = [
        lead,
        a * log_v + 2.0 * g3[1] - 6.0 * g1[1],
        2.0 * g3[2] - 6.0 * g1[2],
        2.0 * g3[3] - 6.0 * g1[3],
    ]
    out = nil_exp(logs)
    return [z * c for c in out]


def mb_integrand_line(sigma: float, ys, log_v: complex, l: int, z: complex = 1.0) -> list:
    """F_l at s = sigma + i y for each y, as a list of 4-lists."""
    return [mb_integrand(complex(sigma, y), log_v, l, z) for y in ys]
