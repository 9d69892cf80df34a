"""Hypergeometric I- and H-series on both sides, and Picard-Fuchs residuals.

GW side (p^4 = 0), with P = p / (2 pi i):

    I_GW(v, z) = z v^{p/z} sum_n v^n prod_{b<=3n} (3p + bz)^2 / prod_{b<=n} (p + bz)^6
    H_GW(v, z) = sum_n z v^{P+n} Gamma(3P + 3n + 1)^2 / Gamma(P + n + 1)^6

FJRW side, sector k = d + 1 mod 3 for d != 2 mod 3, (H^{(k)})^2 = 0:

    I_FJRW(u, z) = sum_d z u^{d+1+H/z} 3^{-6[d/3]}
                   prod_{b<=d, b=d+1 (3)} (H + bz)^6 / prod_{b<=d} (H + bz)^2
    H_FJRW(u, z): unit parts (2 pi i)^2 S_0, H parts (2 pi i) S_1, where
    S = z sum_d u^{d+1+H} Gamma(d/3 + 1/3 + H/3)^6
          / (Gamma(a_k + H/3)^6 Gamma(1 - a_k - H/3)^6 Gamma(d + 1 + H)^2)
    with a_1 = 1/3, a_2 = 2/3.

Everything is summed in log space, so large Gamma values never overflow.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import NamedTuple

from .._kernels import log_gamma_nilpotent
from ..exact import TruncatedSeries
from .nilpotent import FjrwNumeric, NilpotentComplex
from .special import complex_loggamma, complex_polygamma, gamma_nilpotent, loggamma_nilpotent

TWO_PI_I = 2j * math.pi
LOG3 = math.log(3.0)
GW_RADIUS_LOG = -6.0 * LOG3  # |v| < 3^-6
FJRW_RADIUS_LOG = 2.0 * LOG3  # |u| < 3^2
SERIES_KINDS = ("IGW", "IFJRW", "HGW", "HFJRW")


class ConvergenceDomainError(ValueError):
    """Series argument outside its disk of convergence."""


class SeriesResult(NamedTuple):
    value: NilpotentComplex | FjrwNumeric
    tail_bound: float
    terms: int


def _log_arg(arg: complex | None, log_arg: complex | None) -> complex:
    if log_arg is not None:
        return complex(log_arg)
    if arg is None or arg == 0:
        raise ValueError("need a nonzero argument or its logarithm")
    return cmath.log(arg)


def _tail(last: float, prev: float) -> float:
    """Geometric tail estimate from the ratio of the last two term sizes."""
    if last == 0.0:
        return 0.0
    if prev == 0.0:
        return math.inf
    r = last / prev
    return math.inf if r >= 1.0 else last * r / (1.0 - r)


def _gw_term_logs(n: int, log_v: complex, a: complex) -> list[complex]:
    """log of v^{P+n} Gamma(3P+3n+1)^2 / Gamma(P+n+1)^6 with P = a p."""
    g3 = log_gamma_nilpotent(3 * n + 1.0, (3.0 * a, 0.0, 0.0))
    g1 = log_gamma_nilpotent(n + 1.0, (a, 0.0, 0.0))
    return [
        n * log_v + 2.0 * g3[0] - 6.0 * g1[0],
        a * log_v + 2.0 * g3[1] - 6.0 * g1[1],
        2.0 * g3[2] - 6.0 * g1[2],
        2.0 * g3[3] - 6.0 * g1[3],
    ]


def hgw_term(n: int, log_v: complex, z: complex = 1.0) -> NilpotentComplex:
    """The n-th summand of H_GW, which is also the residue of F_l at s = n."""
    return NilpotentComplex(_gw_term_logs(n, log_v, 1.0 / TWO_PI_I)).exp() * complex(z)


def _igw_series(log_v: complex, z: complex, terms: int) -> tuple[NilpotentComplex, list[float]]:
    z = complex(z)
    logz = cmath.log(z)
    # running sums of log(b z) and 1/(b z)^j over b <= 3n and b <= n
    L3 = L1 = 0j
    S3 = [0j, 0j, 0j]
    S1 = [0j, 0j, 0j]
    out = NilpotentComplex()
    sizes = []
    b3 = b1 = 0
    for n in range(terms):
        while b3 < 3 * n:
            b3 += 1
            w = 1.0 / (b3 * z)
            L3 += math.log(b3) + logz
            S3 = [S3[0] + w, S3[1] + w * w, S3[2] + w**3]
        while b1 < n:
            b1 += 1
            w = 1.0 / (b1 * z)
            L1 += math.log(b1) + logz
            S1 = [S1[0] + w, S1[1] + w * w, S1[2] + w**3]
        # log(c + eps) = log c + eps/c - eps^2/(2c^2) + eps^3/(3c^3) with eps = 3p or p
        logs = [
            n * log_v + 2.0 * L3 - 6.0 * L1,
            log_v / z + 2.0 * 3.0 * S3[0] - 6.0 * S1[0],
            2.0 * (-9.0 / 2.0) * S3[1] - 6.0 * (-0.5) * S1[1],
            2.0 * 9.0 * S3[2] - 6.0 * (1.0 / 3.0) * S1[2],
        ]
        term = NilpotentComplex(logs).exp() * z
        sizes.append(term.norm())
        out = out + term
    return out, sizes


def _ifjrw_series(log_u: complex, z: complex, terms: int) -> tuple[FjrwNumeric, list[float]]:
    z = complex(z)
    logz = cmath.log(z)
    sectors = {1: NilpotentComplex(order=2), 2: NilpotentComplex(order=2)}
    sizes = []
    # running sums over b <= d of log(bz) and 1/(bz), split by b mod 3
    L = [0j, 0j, 0j]
    S = [0j, 0j, 0j]
    for d in range(terms):
        if d > 0:
            r = d % 3
            L[r] += math.log(d) + logz
            S[r] += 1.0 / (d * z)
        if d % 3 == 2:
            continue
        k = (d + 1) % 3
        Lall, Sall = sum(L), sum(S)
        logs = [
            (d + 1) * log_u + logz - 6 * (d // 3) * LOG3 + 6.0 * L[k] - 2.0 * Lall,
            log_u / z + 6.0 * S[k] - 2.0 * Sall,
        ]
        term = NilpotentComplex(logs, order=2).exp()
        term = term * z
        sizes.append(term.norm())
        sectors[k] = sectors[k] + term
    return FjrwNumeric(sectors[1], sectors[2]), sizes


def _hgw_series(log_v: complex, z: complex, terms: int) -> tuple[NilpotentComplex, list[float]]:
    out = NilpotentComplex()
    sizes = []
    for n in range(terms):
        t = hgw_term(n, log_v, z)
        sizes.append(t.norm())
        out = out + t
    return out, sizes


def hfjrw_raw_term(d: int, log_u: complex, z: complex = 1.0) -> NilpotentComplex:
    """The d-th summand of S (before the (2 pi i)^{-deg0/2} rescaling), in H^{(k)}."""
    k = (d + 1) % 3
    if k == 0:
        raise ValueError("d = 2 mod 3 does not contribute")
    ak = Fraction(k, 3)
    H = NilpotentComplex.p(order=2)
    logs = (
        H * log_u
        + (d + 1) * log_u
        + 6 * loggamma_nilpotent(H * (1 / 3) + (d + 1) / 3)
        - 6 * loggamma_nilpotent(H * (1 / 3) + float(ak))
        - 6 * loggamma_nilpotent(H * (-1 / 3) + float(1 - ak))
        - 2 * loggamma_nilpotent(H + (d + 1.0))
    )
    return logs.exp() * complex(z)


def _hfjrw_series(log_u: complex, z: complex, terms: int) -> tuple[FjrwNumeric, list[float]]:
    raw = {1: NilpotentComplex(order=2), 2: NilpotentComplex(order=2)}
    sizes = []
    for d in range(terms):
        if d % 3 == 2:
            continue
        t = hfjrw_raw_term(d, log_u, z)
        sizes.append(t.norm())
        k = (d + 1) % 3
        raw[k] = raw[k] + t
    return FjrwNumeric(*(fjrw_grading(raw[k]) for k in (1, 2))), sizes


def fjrw_grading(s: NilpotentComplex) -> NilpotentComplex:
    """(2 pi i)^{-deg0/2} on one sector: deg0 is -4 on the unit, -2 on H."""
    return NilpotentComplex([s.coeffs[0] * TWO_PI_I**2, s.coeffs[1] * TWO_PI_I], order=2)


def gw_grading(c: NilpotentComplex) -> NilpotentComplex:
    """(2 pi i)^{deg0/2} on H_GW: p^n is scaled by (2 pi i)^n."""
    return NilpotentComplex([x * TWO_PI_I**n for n, x in enumerate(c.coeffs)])


def eval_series(
    which: str,
    arg: complex | None = None,
    z: complex = 1.0,
    terms: int = 200,
    log_arg: complex | None = None,
) -> SeriesResult:
    """Partial sum of one of IGW, IFJRW, HGW, HFJRW.

    ``arg`` is v for the GW series and u for the FJRW series; pass
    ``log_arg`` instead to pick a branch of the logarithm.
    """
    if which not in SERIES_KINDS:
        raise ValueError(f"unknown series {which!r}; expected one of {SERIES_KINDS}")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    lg = _log_arg(arg, log_arg)
    if which in ("IGW", "HGW"):
        if lg.real >= GW_RADIUS_LOG:
            raise ConvergenceDomainError(f"|v| = exp({lg.real:.4g}) is outside |v| < 3^-6")
        value, sizes = (_igw_series if which == "IGW" else _hgw_series)(lg, z, terms)
    else:
        if lg.real >= FJRW_RADIUS_LOG:
            raise ConvergenceDomainError(f"|u| = exp({lg.real:.4g}) is outside |u| < 9")
        value, sizes = (_ifjrw_series if which == "IFJRW" else _hfjrw_series)(lg, z, terms)
    # FJRW terms come in two interleaved sectors; compare like with like
    step = 1 if which in ("IGW", "HGW") else 2
    tail = _tail(sizes[-1], sizes[-1 - step]) if len(sizes) > step else math.inf
    return SeriesResult(value, tail, terms)


def hfjrw_closed(log_u: complex, z: complex = 1.0, terms: int = 200) -> FjrwNumeric:
    """H_FJRW from its H-expanded form, with psi terms written out.

    Sector k collects d = k - 1 mod 3; the bracket carries
    2 psi(d/3+1/3) - 2 psi(d+1) +- 2 (psi(2/3) - psi(1/3)) + log u.
    """
    c = (math.sqrt(3.0) / (2.0 * math.pi)) ** 6
    gap = complex_polygamma(0, 2 / 3) - complex_polygamma(0, 1 / 3)
    sec = {1: [0j, 0j], 2: [0j, 0j]}
    for d in range(terms):
        k = (d + 1) % 3
        if k == 0:
            continue
        base = z * cmath.exp((d + 1) * log_u + 6 * complex_loggamma((d + 1) / 3) - 2 * math.lgamma(d + 1)) * c
        sign = 1 if k == 1 else -1
        bracket = (
            2 * complex_polygamma(0, (d + 1) / 3) - 2 * complex_polygamma(0, d + 1.0) + 2 * sign * gap + log_u
        )
        sec[k][0] += TWO_PI_I**2 * base
        sec[k][1] += TWO_PI_I * base * bracket
    return FjrwNumeric(NilpotentComplex(sec[1], order=2), NilpotentComplex(sec[2], order=2))


# ---------------------------------------------------------------- Gamma classes


def gamma_gw_class() -> NilpotentComplex:
    """Gamma(1+p)^6 / Gamma(1+3p)^2."""
    p = NilpotentComplex.p()
    return gamma_nilpotent(p + 1) ** 6 * gamma_nilpotent(p * 3 + 1).inverse() ** 2


def gamma_fjrw_class() -> FjrwNumeric:
    """Gamma(2/3 - H/3)^6 Gamma(1+H)^2 on sector 1, Gamma(1/3 - H/3)^6 Gamma(1+H)^2 on sector 2."""
    H = NilpotentComplex.p(order=2)
    out = []
    for a in (2 / 3, 1 / 3):
        out.append(gamma_nilpotent(H * (-1 / 3) + a) ** 6 * gamma_nilpotent(H + 1) ** 2)
    return FjrwNumeric(*out)


# ---------------------------------------------------------------- Picard-Fuchs


def igw_coefficients_exact(terms: int) -> list[TruncatedSeries]:
    """a_n(p) = prod_{b<=3n} (3p+b)^2 / prod_{b<=n} (p+b)^6 in Q[p]/p^4 (z = 1)."""
    one = TruncatedSeries([Fraction(1)], 4, Fraction(0))
    p = TruncatedSeries([Fraction(0), Fraction(1)], 4, Fraction(0))
    out = []
    a = one
    for n in range(terms):
        if n:
            num = one
            for b in range(3 * n - 2, 3 * n + 1):
                num = num * (p * 3 + b)
            den = (p + n) ** 6
            a = a * num * num * den.inverse()
        out.append(a)
    return out


def pf_residual(which: str, terms: int = 40) -> Fraction | float:
    """Largest residual of theta^4 - 9 v (3 theta + 1)^2 (3 theta + 2)^2 on the series.

    IGW: on v^p sum a_n v^n the operator gives, at v^{p+n},
    (p+n)^4 a_n - 9 (3p+3n-2)^2 (3p+3n-1)^2 a_{n-1}; checked exactly in Q[p]/p^4.

    IFJRW: with v = u^-3, theta_v = -theta_u / 3; on sum c_d u^w, w = d+1+H,
    the u^w coefficient is (w^4/81) c_d - 9 (w+1)^2 (w+2)^2 c_{d+3}; reported
    relative to |w^4 c_d / 81| in floating point.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if which == "IGW":
        a = igw_coefficients_exact(terms)
        p = TruncatedSeries([Fraction(0), Fraction(1)], 4, Fraction(0))
        worst = Fraction(0)
        for n in range(terms):
            res = (p + n) ** 4 * a[n]
            if n:
                f = (p * 3 + (3 * n - 2)) * (p * 3 + (3 * n - 1))
                res = res - f * f * a[n - 1] * 9
            worst = max([worst] + [abs(c) for c in res.coeffs])
        return worst
    if which == "IFJRW":
        coeffs = _ifjrw_coefficients(terms)
        H = NilpotentComplex.p(order=2)
        worst = 0.0
        for d, c in coeffs.items():
            if d + 3 not in coeffs:
                continue
            w = H + (d + 1)
            lhs = w**4 * c * (1 / 81)
            rhs = ((w + 1) * (w + 2)) ** 2 * coeffs[d + 3] * 9
            worst = max(worst, (lhs - rhs).norm() / lhs.norm())
        return worst
    raise ValueError(f"Picard-Fuchs residual is defined for IGW and IFJRW, not {which!r}")


def _ifjrw_coefficients(terms: int) -> dict[int, NilpotentComplex]:
    """c_d(H) at z = 1 from the defining products, in floating point."""
    H = NilpotentComplex.p(order=2)
    out = {}
    for d in range(terms):
        if d % 3 == 2:
            continue
        c = NilpotentComplex([1.0], order=2) * (3.0 ** (-6 * (d // 3)))
        for b in range(1, d + 1):
            f = H + b
            c = c * f.inverse() ** 2
            if b % 3 == (d + 1) % 3:
                c = c * f**6
        out[d] = c
    return out
