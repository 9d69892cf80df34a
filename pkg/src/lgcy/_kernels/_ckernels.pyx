# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the functions in ``_pykernels``.

Polynomial coefficients stay Python objects (exact ints and Fractions) and
monomial keys can exceed 64 bits, so the polynomial loops only save
interpreter overhead.  The Gamma and integrand code runs on C doubles.
"""

from libc.math cimport atan2, cos, cosh, exp, floor, hypot, log, sin, sinh, M_PI

# ---------------------------------------------------------------- polynomials


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, v
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def poly_addmul_into(dict acc, dict a, dict b):
    cdef object ka, ca, kb, cb, k, v
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = acc.get(k, 0) + ca * cb
            if v:
                acc[k] = v
            else:
                del acc[k]


def sparse_matmul(dict a_rows, dict b_rows, rows=None):
    cdef dict out = {}
    cdef dict acc, row, brow, cell
    cdef object i, j, k, a, b
    it = a_rows.items() if rows is None else ((i, a_rows.get(i, {})) for i in rows)
    for i, row in it:
        acc = {}
        for j, a in row.items():
            brow = b_rows.get(j)
            if not brow:
                continue
            for k, b in brow.items():
                cell = acc.get(k)
                if cell is None:
                    cell = {}
                    acc[k] = cell
                poly_addmul_into(cell, a, b)
        out[i] = {k: v for k, v in acc.items() if v}
    return out


# ---------------------------------------------------------------- complex helpers


cdef inline double complex _c(double re, double im):
    return re + im * 1j


cdef inline double complex _clog(double complex z):
    return _c(log(hypot(z.real, z.imag)), atan2(z.imag, z.real))


cdef inline double complex _cexp(double complex z):
    cdef double r = exp(z.real)
    return _c(r * cos(z.imag), r * sin(z.imag))


cdef inline double complex _csin(double complex z):
    return _c(sin(z.real) * cosh(z.imag), cos(z.real) * sinh(z.imag))


cdef double[10] _STIRLING = [
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0,
    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0, 43867.0 / 244188.0,
    -174611.0 / 125400.0,
]
cdef double[10] _BERN = [
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
]
cdef double _HALF_LOG_2PI = 0.5 * log(2.0 * M_PI)
cdef double _SHIFT = 16.0


cdef int _lgd(double complex z, double complex* out) except -1:
    cdef double complex lg_shift = 0, p0 = 0, p1 = 0, p2 = 0
    cdef double complex inv, inv2, logz, s, w, lg, psi0, psi1, psi2
    cdef int k
    while z.real < _SHIFT:
        if z.imag == 0 and z.real <= 0 and z.real == floor(z.real):
            raise ValueError("Gamma has a pole at a non-positive integer")
        inv = 1.0 / z
        lg_shift = lg_shift + _clog(z)
        p0 = p0 - inv
        inv2 = inv * inv
        p1 = p1 + inv2
        p2 = p2 - 2.0 * inv2 * inv
        z = z + 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    logz = _clog(z)
    s = 0
    w = inv
    for k in range(10):
        s = s + _STIRLING[k] * w
        w = w * inv2
    lg = (z - 0.5) * logz - z + _HALF_LOG_2PI + s
    s = 0
    w = inv2
    for k in range(10):
        s = s + _BERN[k] / (2 * (k + 1)) * w
        w = w * inv2
    psi0 = logz - 0.5 * inv - s
    s = 0
    w = inv2 * inv
    for k in range(10):
        s = s + _BERN[k] * w
        w = w * inv2
    psi1 = inv + 0.5 * inv2 + s
    s = 0
    w = inv2 * inv2
    for k in range(10):
        s = s + (2 * (k + 1) + 1) * _BERN[k] * w
        w = w * inv2
    psi2 = -inv2 - inv2 * inv - s
    out[0] = lg - lg_shift
    out[1] = psi0 + p0
    out[2] = psi1 + p1
    out[3] = psi2 + p2
    return 0


def loggamma_derivs(z):
    cdef double complex out[4]
    _lgd(complex(z), out)
    return out[0], out[1], out[2], out[3]


cdef int _lgn(double complex z0, double complex e1, double complex e2, double complex e3,
              double complex* res) except -1:
    cdef double complex d[4]
    _lgd(z0, d)
    res[0] = d[0]
    res[1] = d[1] * e1
    res[2] = d[1] * e2 + 0.5 * d[2] * e1 * e1
    res[3] = d[1] * e3 + d[2] * e1 * e2 + d[3] * e1 * e1 * e1 / 6.0
    return 0


def log_gamma_nilpotent(z0, eps):
    cdef double complex r[4]
    e1, e2, e3 = eps
    _lgn(complex(z0), complex(e1), complex(e2), complex(e3), r)
    return [r[0], r[1], r[2], r[3]]


cdef inline void _nexp(double complex* c, double complex* out):
    cdef double complex e0 = _cexp(c[0])
    out[0] = e0
    out[1] = e0 * c[1]
    out[2] = e0 * (c[2] + 0.5 * c[1] * c[1])
    out[3] = e0 * (c[3] + c[1] * c[2] + c[1] * c[1] * c[1] / 6.0)


def nil_exp(c):
    cdef double complex a[4]
    cdef double complex o[4]
    cdef int i
    for i in range(4):
        a[i] = complex(c[i])
    _nexp(a, o)
    return [o[0], o[1], o[2], o[3]]


cdef int _mb(double complex s, double complex log_v, int l, double complex z,
             double complex* out) except -1:
    cdef double complex a = _c(0.0, -1.0 / (2.0 * M_PI))  # 1 / (2 pi i)
    cdef double complex g3[4]
    cdef double complex g1[4]
    cdef double complex logs[4]
    cdef double complex e[4]
    cdef int i
    _lgn(3.0 * s + 1.0, 3.0 * a, 0, 0, g3)
    _lgn(s + 1.0, a, 0, 0, g1)
    logs[0] = (s * log_v + 2.0 * g3[0] - 6.0 * g1[0]
               + _clog(M_PI / _csin(M_PI * s)) - (2 * l - 1) * M_PI * _c(0.0, 1.0) * s)
    logs[1] = a * log_v + 2.0 * g3[1] - 6.0 * g1[1]
    logs[2] = 2.0 * g3[2] - 6.0 * g1[2]
    logs[3] = 2.0 * g3[3] - 6.0 * g1[3]
    _nexp(logs, e)
    for i in range(4):
        out[i] = z * e[i]
    return 0


def mb_integrand(s, log_v, int l, z=1.0):
    cdef double complex o[4]
    _mb(complex(s), complex(log_v), l, complex(z), o)
    return [o[0], o[1], o[2], o[3]]


def mb_integrand_line(double sigma, ys, log_v, int l, z=1.0):
    cdef double complex o[4]
    cdef double complex lv = complex(log_v)
    cdef double complex zz = complex(z)
    out = []
    for y in ys:
        _mb(_c(sigma, y), lv, l, zz, o)
        out.append([o[0], o[1], o[2], o[3]])
    return out
