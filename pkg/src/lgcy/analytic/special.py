"""Gamma, digamma and the first polygammas on the complex plane.

Values for Re z >= 1/2 come from the shifted Stirling series in the kernels;
the left half-plane goes through reflection, which keeps relative accuracy
near the negative real axis.
"""

from __future__ import annotations

import cmath
import math

from .._kernels import loggamma_derivs
from .nilpotent import NilpotentComplex

EULER_GAMMA = 0.57721566490153286061


class PoleError(ValueError):
    """Argument sits on a pole of Gamma."""


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _check(z: complex) -> complex:
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return z


def sinpi(z: complex) -> complex:
    """sin(pi z) with the integer part removed first, so it stays accurate near poles."""
    z = complex(z)
    n = round(z.real)
    v = cmath.sin(math.pi * complex(z.real - n, z.imag))
    return -v if n % 2 else v


def cospi(z: complex) -> complex:
    z = complex(z)
    n = round(z.real)
    v = cmath.cos(math.pi * complex(z.real - n, z.imag))
    return -v if n % 2 else v


def complex_loggamma(z: complex) -> complex:
    """A logarithm of Gamma(z); the imaginary part is only defined mod 2 pi."""
    z = _check(z)
    if z.real >= 0.5:
        return loggamma_derivs(z)[0]
    return cmath.log(math.pi / sinpi(z)) - loggamma_derivs(1 - z)[0]


def complex_gamma(z: complex) -> complex:
    z = _check(z)
    if z.real >= 0.5:
        return cmath.exp(loggamma_derivs(z)[0])
    return math.pi / (sinpi(z) * cmath.exp(loggamma_derivs(1 - z)[0]))


def complex_digamma(z: complex) -> complex:
    return complex_polygamma(0, z)


def complex_polygamma(n: int, z: complex) -> complex:
    """psi^(n)(z) for n = 0, 1, 2."""
    if n not in (0, 1, 2):
        raise ValueError("polygamma is implemented for orders 0, 1, 2")
    z = _check(z)
    if z.real >= 0.5:
        return loggamma_derivs(z)[n + 1]
    # psi(1-z) - psi(z) = pi cot(pi z), differentiated n times
    w = loggamma_derivs(1 - z)[n + 1]
    c = cospi(z)
    s = sinpi(z)
    if n == 0:
        return w - math.pi * c / s
    if n == 1:
        return -w + math.pi**2 / (s * s)
    return w - 2.0 * math.pi**3 * c / (s * s * s)


def loggamma_nilpotent(z: NilpotentComplex) -> NilpotentComplex:
    """log Gamma(z0 + N) = lgamma(z0) + psi N + psi' N^2/2 + psi'' N^3/6."""
    z0 = z.coeffs[0]
    derivs = [complex_loggamma(z0)] + [complex_polygamma(k, z0) for k in range(min(3, z.order - 1))]
    return z.apply(derivs)


def gamma_nilpotent(z: NilpotentComplex) -> NilpotentComplex:
    """Gamma of a nilpotent-shifted argument; the constant term must avoid poles."""
    z0 = _check(z.coeffs[0])
    g0 = complex_gamma(z0)
    lg = loggamma_nilpotent(z)
    nil = lg.nilpotent_part()
    return nil.exp() * g0


def reciprocal_gamma_nilpotent(z: NilpotentComplex) -> NilpotentComplex:
    return gamma_nilpotent(z).inverse()
