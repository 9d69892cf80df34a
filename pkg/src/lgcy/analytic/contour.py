"""Mellin-Barnes continuation of H_GW through the window w_l.

    F_l(s) = z e^{(P+s) log v} Gamma(3P+3s+1)^2 / Gamma(P+s+1)^6
             * pi / sin(pi s) * e^{-(2l-1) pi i s},      P = p / (2 pi i)

Right poles s = n >= 0 have residue the n-th H_GW summand.  Left poles
s = -P - (d+1)/3, d != 2 mod 3, have residues built from psi values; their
negated sum is the continuation.  The contour is the vertical line
Re s = sigma with -1/3 < sigma < 0, oriented downward, so

    MB(v) = (1 / 2 pi i) int_C F_l ds = -(1 / 2 pi) int F_l(sigma + iy) dy.

The integral converges when |Im log v - (2l-1) pi| < pi; off the centre
line the integrand decays like exp(-(pi - |delta|) |y|).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad_vec

from .._kernels import mb_integrand
from ..mirror import MirrorMap, RangeError, build_mirror_map
from .nilpotent import FjrwNumeric, NilpotentComplex, relative_error
from .series import GW_RADIUS_LOG, TWO_PI_I, eval_series
from .special import PoleError, complex_loggamma, complex_polygamma

POLE_WARN_DISTANCE = 1e-6
# keep the line 1/20 away from the poles at s = 0 and s = -1/3
SIGMA_MIN = -1.0 / 3.0 + 0.05
SIGMA_MAX = -0.05


class BandError(RangeError):
    """Im(log v) outside the convergence band of window w_l."""


class PoleProximityWarning(RuntimeWarning):
    pass


class TruncationWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Straight vertical contour Re s = sigma, truncated at |Im s| = T.

    ``T = None`` picks the height from the decay rate; ``h`` is the width of
    the initial quadrature panels.
    """

    l: int = 0
    sigma: float = -1.0 / 6.0
    T: float | None = None
    h: float = 2.0
    detour: str = "straight line; no poles lie between it and the drawn path"

    def validate(self) -> None:
        if not SIGMA_MIN <= self.sigma <= SIGMA_MAX:
            raise ValueError(f"sigma must lie in [{SIGMA_MIN:.4f}, {SIGMA_MAX}], got {self.sigma}")
        if self.T is not None and self.T <= 0:
            raise ValueError("truncation height must be positive")
        if self.h <= 0:
            raise ValueError("panel width must be positive")


class MBResult(NamedTuple):
    value: NilpotentComplex
    error: float
    T: float
    tail: float


def band_offset(l: int, log_v: complex) -> float:
    """Im(log v) - (2l-1) pi; the integral converges iff its size is < pi."""
    return complex(log_v).imag - (2 * l - 1) * math.pi


def check_band(l: int, log_v: complex) -> float:
    delta = band_offset(l, log_v)
    if abs(delta) >= math.pi:
        lo, hi = (2 * l - 2) * math.pi, 2 * l * math.pi
        raise BandError(
            f"Im(log v) = {complex(log_v).imag:.6g} is outside the band ({lo:.6g}, {hi:.6g}) of window {l}"
        )
    return delta


def _pole_distance(s: complex) -> float:
    n = round(s.real)
    d_int = abs(s - n)
    # left family -(d+1)/3 with d != 2 mod 3, i.e. thirds that are not integers
    t = round(-3 * s.real)
    d_left = abs(s + t / 3) if t > 0 and t % 3 else math.inf
    return min(d_int, d_left)


def integrand_Fl(l: int, s: complex, log_v: complex, z: complex = 1.0) -> NilpotentComplex:
    s = complex(s)
    dist = _pole_distance(s)
    if dist == 0.0:
        raise PoleError(f"F_{l} has a pole at s = {s}")
    if dist < POLE_WARN_DISTANCE:
        warnings.warn(f"s = {s} is within {dist:.2e} of a pole of F_{l}", PoleProximityWarning, stacklevel=2)
    return NilpotentComplex(mb_integrand(s, complex(log_v), l, complex(z)))


def _choose_T(spec: ContourSpec, l: int, log_v: complex, z: complex, rate: float, tol: float) -> float:
    f0 = NilpotentComplex(mb_integrand(complex(spec.sigma, 0.0), log_v, l, z)).norm()
    T = 4.0
    while T < 400.0:
        edge = max(
            NilpotentComplex(mb_integrand(complex(spec.sigma, y), log_v, l, z)).norm() for y in (T, -T)
        )
        if edge / rate <= tol * 1e-2 * max(f0, 1e-300):
            return T
        T *= 1.5
    return T


def mellin_barnes_integrate(
    l: int,
    log_v: complex,
    z: complex = 1.0,
    spec: ContourSpec | None = None,
    tol: float = 1e-13,
) -> MBResult:
    """(1/2 pi i) times the contour integral of F_l, with an error estimate."""
    spec = spec if spec is not None else ContourSpec(l)
    spec.validate()
    log_v = complex(log_v)
    z = complex(z)
    delta = check_band(l, log_v)
    rate = math.pi - abs(delta)
    T = spec.T if spec.T is not None else _choose_T(spec, l, log_v, z, rate, tol)
    sigma = spec.sigma

    def f(y: float) -> np.ndarray:
        c = mb_integrand(complex(sigma, y), log_v, l, z)
        return np.array([x for v in c for x in (v.real, v.imag)])

    n_panels = max(2, int(math.ceil(2 * T / spec.h)))
    points = list(np.linspace(-T, T, n_panels + 1)[1:-1])
    val, err = quad_vec(f, -T, T, epsabs=0.0, epsrel=tol, norm="max", points=points, limit=4000)
    coeffs = [complex(val[2 * i], val[2 * i + 1]) * (-1.0 / (2.0 * math.pi)) for i in range(4)]
    value = NilpotentComplex(coeffs)
    edge = max(NilpotentComplex(mb_integrand(complex(sigma, y), log_v, l, z)).norm() for y in (T, -T))
    tail = edge / rate / math.pi  # both tails, times 1/(2 pi)
    scale = value.norm() or 1.0
    if tail > tol * scale:
        warnings.warn(
            f"truncation at |Im s| = {T:g} leaves a tail estimate {tail:.2e} above tolerance",
            TruncationWarning,
            stacklevel=2,
        )
    return MBResult(value, err / (2.0 * math.pi) + tail, T, tail)


def left_residue(d: int, l: int, log_v: complex, z: complex = 1.0) -> NilpotentComplex:
    """Res of F_l at s = -P - (d+1)/3, written as in the double-pole expansion.

    With a = P + (d+1)/3 the residue is
      z v^{-(d+1)/3} / (d!^2 Gamma(2/3 - d/3)^6) * pi / sin^2(pi a) * e^{(2l-1) pi i a}
      * [ sin(pi a) (2/3 psi(2/3 - d/3) - 2/3 psi(d+1) - log v / 9 + (2l-1) pi i / 9)
          - cos(pi a) pi / 9 ].
    """
    if d % 3 == 2:
        return NilpotentComplex()
    log_v = complex(log_v)
    x = (2 - d) / 3.0
    a = NilpotentComplex([(d + 1) / 3.0, 1.0 / TWO_PI_I])
    pref = cmath.exp(-(d + 1) / 3.0 * log_v - 2.0 * math.lgamma(d + 1) - 6.0 * complex_loggamma(x))
    sin_a = (a * math.pi).sin()
    cos_a = (a * math.pi).cos()
    phase = (a * ((2 * l - 1) * math.pi * 1j)).exp()
    bracket_c = (
        (2.0 / 3.0) * complex_polygamma(0, x)
        - (2.0 / 3.0) * complex_polygamma(0, d + 1.0)
        - log_v / 9.0
        + (2 * l - 1) * math.pi * 1j / 9.0
    )
    bracket = sin_a * bracket_c - cos_a * (math.pi / 9.0)
    return bracket * phase * (sin_a * sin_a).inverse() * (math.pi * pref * complex(z))


def residue_sum_left(l: int, log_v: complex, z: complex = 1.0, terms: int = 300) -> NilpotentComplex:
    """-sum of left residues over d < terms; the continuation of H_GW for Re log v > -6 log 3."""
    out = NilpotentComplex()
    for d in range(terms):
        out = out - left_residue(d, l, log_v, z)
    return out


def residue_sum_right(log_v: complex, z: complex = 1.0, terms: int = 300) -> NilpotentComplex:
    return eval_series("HGW", z=z, terms=terms, log_arg=log_v).value  # type: ignore[return-value]


def mirror_image_numeric(u: MirrorMap, c: FjrwNumeric) -> NilpotentComplex:
    """U_l applied to a numeric FJRW class, with the exact columns evaluated in C."""
    out = NilpotentComplex()
    for coeff, col in zip(c.components(), u.columns):
        out = out + NilpotentComplex(col.to_complex()) * coeff
    return out


@dataclass
class ContinuationSample:
    l: int
    log_v: complex
    side: str  # "GW" or "FJRW"
    integral: NilpotentComplex
    target: NilpotentComplex
    rel_error: float
    residue_error: float
    quad_error: float

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "log_v": [self.log_v.real, self.log_v.imag],
            "side": self.side,
            "integral": self.integral.to_json(),
            "target": self.target.to_json(),
            "rel_error": self.rel_error,
            "residue_rel_error": self.residue_error,
            "quad_error": self.quad_error,
        }


def continuation_sample(
    l: int,
    log_v: complex,
    z: complex = 1.0,
    spec: ContourSpec | None = None,
    terms: int = 400,
    tol: float = 1e-13,
) -> ContinuationSample:
    """Integrate F_l at one point and compare with the series on the matching side.

    Left of Re log v = -6 log 3 the target is H_GW; right of it, U_l applied
    to H_FJRW at log u = -log v / 3.  The residue sum on the same side is
    reported as a second comparison.
    """
    log_v = complex(log_v)
    mb = mellin_barnes_integrate(l, log_v, z, spec if spec is not None else ContourSpec(l), tol)
    if log_v.real < GW_RADIUS_LOG:
        side = "GW"
        target = eval_series("HGW", z=z, terms=terms, log_arg=log_v).value
        residues = target
    else:
        side = "FJRW"
        log_u = -log_v / 3.0
        hf = eval_series("HFJRW", z=z, terms=terms, log_arg=log_u).value
        target = mirror_image_numeric(build_mirror_map(l), hf)  # type: ignore[arg-type]
        residues = residue_sum_left(l, log_v, z, terms)
    return ContinuationSample(
        l,
        log_v,
        side,
        mb.value,
        target,  # type: ignore[arg-type]
        relative_error(mb.value, target),  # type: ignore[arg-type]
        relative_error(mb.value, residues),  # type: ignore[arg-type]
        mb.error,
    )
