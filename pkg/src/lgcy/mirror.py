"""Mirror maps U_l from the narrow FJRW space to the Calabi-Yau state space.

Two constructions are provided.  ``build_mirror_map`` expands the closed
rational form in zeta^k e^p.  ``build_mirror_map_matrix`` goes through the
semi-infinite matrix form: inputs are written in the Fourier basis
sum_k zeta^{-qk}(1-zeta^k)^6 e^{(k)}, where the matrix regroups into slope-1
lines and every line past the sixth is a multiple of (1-e^p)^5 and vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable

from .cohomology import FjrwClass, GwClass, ch_kminus, gw_exp
from .exact import ONE, ZERO, EisensteinScalar

SAFETY_ROWS = 8


class RangeError(ValueError):
    """Parameters outside the range where a computation route is defined."""


@dataclass(frozen=True)
class MirrorMap:
    """Images of (1^(1), H^(1), 1^(2), H^(2)) under U_l."""

    l: int
    columns: tuple[GwClass, GwClass, GwClass, GwClass]

    @property
    def matrix(self) -> list[list[EisensteinScalar]]:
        """4x4 array, row n is the p^n coefficient, column j the basis index."""
        return [[col[n] for col in self.columns] for n in range(4)]

    def perturbed(self, column: int = 0, degree: int = 0, delta: Any = Fraction(1, 1000)) -> MirrorMap:
        """Copy with one entry shifted by ``delta``; used to exercise failure paths."""
        cols = list(self.columns)
        cs = list(cols[column].coeffs)
        cs[degree] = cs[degree] + EisensteinScalar.coerce(delta)
        cols[column] = GwClass(cs)
        return MirrorMap(self.l, tuple(cols))

    def to_json(self) -> dict:
        return {"l": self.l, "columns": [c.to_json() for c in self.columns]}


def _x(k: int) -> GwClass:
    return gw_exp(1) * EisensteinScalar.zeta_power(k)


def build_mirror_map(l: int) -> MirrorMap:
    cols: list[GwClass] = []
    for k in (1, 2):
        x = _x(k)
        inv = (ONE - x).inverse()
        xl = x ** l
        h_img = xl * inv * Fraction(1, 3)
        unit_img = xl * inv * Fraction(l, 9) + x ** (l + 1) * inv * inv * Fraction(1, 9)
        cols.extend([unit_img, h_img])
    return MirrorMap(l, tuple(cols))


def _binomial_row(n: int) -> list[int]:
    return [(-1) ** j * comb(n, j) for j in range(n + 1)]


def fourier_image_lines(
    l: int, q: int, kind: str, power: int = 6, rows: int | None = None
) -> list[GwClass]:
    """Slope-line contributions of U_l(sum_k zeta^{-qk}(1-zeta^k)^power e^{(k)}).

    ``kind`` is "unit" or "H".  Line s collects matrix rows r with r + j = s,
    j indexing the binomial vector; line s survives only when s + l = q mod 3.
    Returns the list of line contributions for s = 0 .. rows-1.
    """
    if rows is None:
        rows = power + SAFETY_ROWS
    b = _binomial_row(power)
    e = [gw_exp(l + r) for r in range(rows)]
    lines = []
    for s in range(rows):
        acc = GwClass()
        if (s + l - q) % 3 == 0:
            for j in range(min(power, s) + 1):
                r = s - j
                coef = Fraction(l + r, 3) if kind == "unit" else Fraction(1)
                acc = acc + e[r] * (coef * b[j])
        lines.append(acc)
    return lines


def build_mirror_map_matrix(l: int, rows: int | None = None) -> MirrorMap:
    """U_l via the truncated matrix form; raises if a trailing line survives."""
    images: dict[tuple[str, int], GwClass] = {}
    for kind in ("unit", "H"):
        for q in range(3):
            lines = fourier_image_lines(l, q, kind, 6, rows)
            for s, line in enumerate(lines[6:], start=6):
                if not line.is_zero():
                    raise ArithmeticError(f"slope line {s} does not vanish (l={l}, q={q})")
            total = GwClass()
            for line in lines[:6]:
                total = total + line
            images[(kind, q)] = total
    cols: list[GwClass] = []
    for k in (1, 2):
        scale = (ONE - EisensteinScalar.zeta_power(k)) ** 6 * 3
        scale_inv = scale.inv()
        for kind in ("unit", "H"):
            acc = GwClass()
            for q in range(3):
                acc = acc + images[(kind, q)] * EisensteinScalar.zeta_power(q * k)
            cols.append(acc * scale_inv)
    return MirrorMap(l, tuple(cols))


def apply_mirror(u: MirrorMap, c: FjrwClass) -> GwClass:
    out = GwClass()
    for coeff, col in zip(c.components(), u.columns):
        if coeff:
            out = out + col * coeff
    return out


def fourier_vector(q: int, power: int, kind: str) -> FjrwClass:
    """sum_{k=1,2} zeta^{-qk}(1-zeta^k)^power e^{(k)}, e = 1 or H."""
    vals = []
    for k in (1, 2):
        vals.append(EisensteinScalar.zeta_power(-q * k) * (ONE - EisensteinScalar.zeta_power(k)) ** power)
    if kind == "unit":
        return FjrwClass(vals[0], 0, vals[1], 0)
    return FjrwClass(0, vals[0], 0, vals[1])


def _window(l: int, width: int, q: int) -> list[int]:
    return [s for s in range(l, l + width + 1) if (s - q) % 3 == 0]


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def elem1_rhs(l: int, q: int) -> GwClass:
    out = GwClass()
    for s in _window(l, 5, q):
        for k in range(s - l + 1):
            i = l + k + 6 - s
            out = out + gw_exp(k + l) * (Fraction(s, 3) * (-1) ** i * _binom(6, i))
        for k in range(s - l):
            i = s - l - k
            out = out - gw_exp(k + l) * (2 * (-1) ** i * _binom(5, i - 1))
    return out


def elem2_rhs(l: int, q: int) -> GwClass:
    out = GwClass()
    for s in _window(l, 4, q):
        for k in range(s - l + 1):
            i = s - l - k
            out = out + gw_exp(k + l) * ((-1) ** i * _binom(5, i))
    return out


def elem3_rhs(l: int, q: int) -> GwClass:
    out = GwClass()
    for s in _window(l, 5, q):
        for k in range(s - l + 1):
            i = s - l - k
            out = out + gw_exp(k + l) * ((-1) ** i * _binom(6, i))
    return out


def slope_line_residual(l: int, m: int, t: int) -> GwClass:
    """(1/3)e^{pl}(m+3t)(1-e^p)^6 - 2e^{(l+1)p}(1-e^p)^5, zero mod p^4."""
    one_minus = GwClass([1]) - gw_exp(1)
    return gw_exp(l) * one_minus ** 6 * Fraction(m + 3 * t, 3) - gw_exp(l + 1) * one_minus ** 5 * 2


def kminus_image_closed(l: int, q: int, m: int) -> GwClass:
    """Closed form of U_l(ch K_-(q)[m]) as a single double sum."""
    out = GwClass()
    for s in _window(l, 5, q):
        for k in range(s - l + 1):
            i = l + k + 6 - s
            out = out + gw_exp(k + l) * (Fraction(s - q - 6, 3) * (-1) ** i * _binom(6, i))
    return -out if m % 2 else out


@dataclass
class Report:
    params: dict
    lhs: Any
    rhs: Any
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(v: Any) -> Any:
            if hasattr(v, "to_json"):
                return v.to_json()
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v

        out = {"params": self.params, "lhs": enc(self.lhs), "rhs": enc(self.rhs), "pass": self.passed}
        if self.detail:
            out["detail"] = enc(self.detail)
        return out


def check_elem_identities(l: int, q: int, mirror: MirrorMap | None = None) -> Report:
    u = mirror if mirror is not None else build_mirror_map(l)
    lhs = {
        "elem1": apply_mirror(u, fourier_vector(q, 6, "unit")),
        "elem2": apply_mirror(u, fourier_vector(q, 5, "H")),
        "elem3": apply_mirror(u, fourier_vector(q, 6, "H")),
    }
    rhs = {"elem1": elem1_rhs(l, q), "elem2": elem2_rhs(l, q), "elem3": elem3_rhs(l, q)}
    ok = {k: lhs[k] == rhs[k] for k in lhs}
    return Report({"l": l, "q": q}, lhs, rhs, all(ok.values()), {"identities": ok})


_orlov_routes: dict[str, Callable[[int, int, int], GwClass]] = {}


def register_orlov_route(name: str, fn: Callable[[int, int, int], GwClass]) -> None:
    _orlov_routes[name] = fn


def _orlov_route(name: str) -> Callable[[int, int, int], GwClass]:
    if not _orlov_routes:
        from .mf import window  # noqa: F401  (registers the routes)
    try:
        return _orlov_routes[name]
    except KeyError:
        raise ValueError(f"unknown Orlov route {name!r}") from None


def check_main_theorem(
    t: int, q: int, m: int, orlov_method: str = "ledger", mirror: MirrorMap | None = None
) -> Report:
    """U_t(ch K_-(q)[m]) against ch(Orl_{t-3}(K_-(q)[m])) e^{-3p}."""
    if orlov_method == "ledger" and t - 3 - q < 1:
        raise RangeError(f"ledger route needs t-3-q >= 1, got t={t}, q={q}")
    u = mirror if mirror is not None else build_mirror_map(t)
    lhs = apply_mirror(u, ch_kminus(q, m))
    rhs = _orlov_route(orlov_method)(t - 3, q, m) * gw_exp(-3)
    return Report({"t": t, "q": q, "m": m, "method": orlov_method}, lhs, rhs, lhs == rhs)
