"""The two state spaces as exact truncated rings.

``GwClass`` is Q(zeta)[p]/(p^4).  ``FjrwClass`` is the narrow FJRW space, two
orthogonal sectors each isomorphic to Q(zeta)[H]/(H^2).  Products on the FJRW
side are taken sector by sector.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any, Iterable

from .exact import ONE, ZERO, EisensteinScalar, TruncatedSeries

GW_ORDER = 4

# basis order (1^(1), H^(1), 1^(2), H^(2))
FJRW_GR = (0, 2, 4, 6)
FJRW_DEG0 = (-4, -2, -4, -2)


def _eis(x: Any) -> EisensteinScalar:
    return EisensteinScalar.coerce(x)


class GwClass(TruncatedSeries):
    """c0 + c1 p + c2 p^2 + c3 p^3 over Q(zeta)."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable[Any] = (), order: int = GW_ORDER, zero: Any = ZERO) -> None:
        if order != GW_ORDER:
            raise ValueError("GwClass has fixed order 4")
        super().__init__([_eis(c) for c in coeffs], GW_ORDER, ZERO)

    @classmethod
    def p(cls) -> GwClass:
        return cls([0, 1])

    @staticmethod
    def gr(n: int) -> int:
        return 2 * n

    @staticmethod
    def deg0(n: int) -> int:
        return 2 * n

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: list) -> GwClass:
        return cls([EisensteinScalar.from_json(c) for c in obj])

    def to_complex(self) -> list[complex]:
        return [c.to_complex() for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})" + ("" if n == 0 else f"p^{n}"))
        return " + ".join(terms) or "0"


def gw_exp(k: int | Fraction) -> GwClass:
    """e^{kp} truncated at p^4."""
    return GwClass([Fraction(k) ** n / factorial(n) for n in range(GW_ORDER)])


def gw_nilpotent_inverse(c: GwClass) -> GwClass:
    if not c.coeffs[0]:
        raise ZeroDivisionError("GwClass with zero constant term is not invertible")
    return c.inverse()


def _sector(unit: Any = 0, h: Any = 0) -> TruncatedSeries:
    return TruncatedSeries([_eis(unit), _eis(h)], 2, ZERO)


class FjrwClass:
    """s1_unit 1^(1) + s1_H H^(1) + s2_unit 1^(2) + s2_H H^(2)."""

    __slots__ = ("sectors",)

    def __init__(self, s1_unit: Any = 0, s1_H: Any = 0, s2_unit: Any = 0, s2_H: Any = 0) -> None:
        object.__setattr__(self, "sectors", (_sector(s1_unit, s1_H), _sector(s2_unit, s2_H)))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("FjrwClass is immutable")

    @classmethod
    def from_sectors(cls, s1: TruncatedSeries, s2: TruncatedSeries) -> FjrwClass:
        return cls(s1[0], s1[1], s2[0], s2[1])

    @classmethod
    def basis(cls, index: int) -> FjrwClass:
        v = [0, 0, 0, 0]
        v[index] = 1
        return cls(*v)

    @classmethod
    def unit(cls, k: int) -> FjrwClass:
        return cls.basis(2 * (k - 1))

    @classmethod
    def hyperplane(cls, k: int) -> FjrwClass:
        return cls.basis(2 * (k - 1) + 1)

    def sector(self, k: int) -> TruncatedSeries:
        return self.sectors[k - 1]

    @property
    def s1_unit(self) -> EisensteinScalar:
        return self.sectors[0][0]

    @property
    def s1_H(self) -> EisensteinScalar:
        return self.sectors[0][1]

    @property
    def s2_unit(self) -> EisensteinScalar:
        return self.sectors[1][0]

    @property
    def s2_H(self) -> EisensteinScalar:
        return self.sectors[1][1]

    def components(self) -> tuple[EisensteinScalar, ...]:
        """Coordinates on the basis (1^(1), H^(1), 1^(2), H^(2))."""
        return (*self.sectors[0].coeffs, *self.sectors[1].coeffs)

    def __repr__(self) -> str:
        return "FjrwClass({}, {}, {}, {})".format(*map(str, self.components()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FjrwClass):
            return self.sectors == other.sectors
        if other == 0:
            return all(not c for c in self.components())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.sectors)

    def __add__(self, other: FjrwClass) -> FjrwClass:
        if not isinstance(other, FjrwClass):
            return NotImplemented
        return FjrwClass.from_sectors(*(x + y for x, y in zip(self.sectors, other.sectors)))

    def __sub__(self, other: FjrwClass) -> FjrwClass:
        if not isinstance(other, FjrwClass):
            return NotImplemented
        return FjrwClass.from_sectors(*(x - y for x, y in zip(self.sectors, other.sectors)))

    def __neg__(self) -> FjrwClass:
        return FjrwClass.from_sectors(*(-x for x in self.sectors))

    def __mul__(self, other: Any) -> FjrwClass:
        if isinstance(other, FjrwClass):
            return FjrwClass.from_sectors(*(x * y for x, y in zip(self.sectors, other.sectors)))
        if isinstance(other, (int, Fraction, EisensteinScalar)):
            return FjrwClass.from_sectors(*(x * other for x in self.sectors))
        return NotImplemented

    def __rmul__(self, other: Any) -> FjrwClass:
        if isinstance(other, (int, Fraction, EisensteinScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> FjrwClass:
        return FjrwClass.from_sectors(*(x ** n for x in self.sectors))

    def to_json(self) -> dict:
        return {
            "sector1": [c.to_json() for c in self.sectors[0]],
            "sector2": [c.to_json() for c in self.sectors[1]],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FjrwClass:
        s1 = [EisensteinScalar.from_json(c) for c in obj["sector1"]]
        s2 = [EisensteinScalar.from_json(c) for c in obj["sector2"]]
        return cls(s1[0], s1[1], s2[0], s2[1])


FJRW_ONE = FjrwClass(1, 0, 1, 0)


def fjrw_ch_line(n: int, m: int) -> FjrwClass:
    """Narrow Chern character of O(n)[m]: (-1)^m sum_k zeta^{kn}(1 + (n/3)H)."""
    sign = -1 if m % 2 else 1
    third = Fraction(n, 3)
    parts = []
    for k in (1, 2):
        z = EisensteinScalar.zeta_power(k * n) * sign
        parts.append(_sector(z, z * third))
    return FjrwClass.from_sectors(*parts)


def todd_inverse_narrow() -> FjrwClass:
    """Sector k: (1 - zeta^k (1 + H/3))^6 with H^2 = 0."""
    parts = []
    for k in (1, 2):
        z = EisensteinScalar.zeta_power(k)
        base = _sector(ONE - z, -z / 3)
        parts.append(base ** 6)
    return FjrwClass.from_sectors(*parts)


def ch_kminus(q: int, m: int) -> FjrwClass:
    """Narrow Chern character of K_-(q)[m]."""
    return fjrw_ch_line(-q - 6, m - 6) * todd_inverse_narrow()


def gw_ch_line(k: int, l: int) -> GwClass:
    """ch(O(k)[l]) = (-1)^l e^{kp} on the Calabi-Yau side."""
    e = gw_exp(k)
    return -e if l % 2 else e
