"""Complex truncated series: c0 + c1 p + c2 p^2 + c3 p^3 with p^4 = 0.

The same class with ``order=2`` carries one FJRW sector (unit and H parts).
Functions of an element are applied through their Taylor expansion at the
constant term, which terminates because the nilpotent part does.
"""

from __future__ import annotations

import cmath
from math import factorial
from typing import Any, Callable, Iterable, Sequence

from ..exact import TruncatedSeries


class NilpotentComplex(TruncatedSeries):
    __slots__ = ()

    def __init__(self, coeffs: Iterable[Any] = (), order: int = 4, zero: Any = 0j) -> None:
        super().__init__([complex(c) for c in coeffs], order, 0j)

    @classmethod
    def p(cls, order: int = 4) -> NilpotentComplex:
        return cls([0j, 1.0], order)

    def apply(self, derivs: Sequence[complex]) -> NilpotentComplex:
        """f(self) given f(c0), f'(c0), f''(c0), ... (at least ``order`` values)."""
        n = self.order
        nil = self.nilpotent_part()
        out = self._like([derivs[0]])
        power = self._like([1.0])
        for k in range(1, n):
            power = power * nil
            out = out + power * (derivs[k] / factorial(k))
        return out

    def exp(self) -> NilpotentComplex:
        e0 = cmath.exp(self.coeffs[0])
        return self.apply([e0] * self.order)

    def log(self) -> NilpotentComplex:
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("log of a series with zero constant term")
        d = [cmath.log(c0)]
        for k in range(1, self.order):
            d.append((-1) ** (k - 1) * factorial(k - 1) / c0**k)
        return self.apply(d)

    def cpow(self, a: complex) -> NilpotentComplex:
        """self**a on the principal branch of the constant term."""
        return (self.log() * complex(a)).exp()

    def sin(self) -> NilpotentComplex:
        s, c = cmath.sin(self.coeffs[0]), cmath.cos(self.coeffs[0])
        return self.apply([(s, c, -s, -c)[k % 4] for k in range(self.order)])

    def cos(self) -> NilpotentComplex:
        s, c = cmath.sin(self.coeffs[0]), cmath.cos(self.coeffs[0])
        return self.apply([(c, -s, -c, s)[k % 4] for k in range(self.order)])

    def map(self, f: Callable[[complex], complex]) -> NilpotentComplex:
        return self._like([f(c) for c in self.coeffs])

    def norm(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def close_to(self, other: NilpotentComplex, rel: float) -> bool:
        return relative_error(self, other) <= rel

    def to_json(self) -> list[list[float]]:
        return [[c.real, c.imag] for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: list) -> NilpotentComplex:
        return cls([complex(re, im) for re, im in obj], len(obj))


def relative_error(a: NilpotentComplex | FjrwNumeric, b: NilpotentComplex | FjrwNumeric) -> float:
    """max |a_i - b_i| / max |b_i| over all coefficients."""
    ca, cb = _flat(a), _flat(b)
    scale = max(abs(c) for c in cb) or 1.0
    return max(abs(x - y) for x, y in zip(ca, cb)) / scale


def _flat(x: NilpotentComplex | FjrwNumeric) -> list[complex]:
    if isinstance(x, FjrwNumeric):
        return list(x.components())
    return list(x.coeffs)


class FjrwNumeric:
    """Numeric narrow FJRW class: two order-2 sectors in H^{(1)}, H^{(2)}."""

    __slots__ = ("sector1", "sector2")

    def __init__(self, sector1: NilpotentComplex | None = None, sector2: NilpotentComplex | None = None) -> None:
        object.__setattr__(self, "sector1", sector1 if sector1 is not None else NilpotentComplex(order=2))
        object.__setattr__(self, "sector2", sector2 if sector2 is not None else NilpotentComplex(order=2))
        if self.sector1.order != 2 or self.sector2.order != 2:
            raise ValueError("FJRW sectors have order 2")

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("FjrwNumeric is immutable")

    def sector(self, k: int) -> NilpotentComplex:
        return self.sector1 if k == 1 else self.sector2

    def components(self) -> tuple[complex, complex, complex, complex]:
        """(1^(1), H^(1), 1^(2), H^(2)) coefficients."""
        return (*self.sector1.coeffs, *self.sector2.coeffs)  # type: ignore[return-value]

    def __add__(self, other: FjrwNumeric) -> FjrwNumeric:
        return FjrwNumeric(self.sector1 + other.sector1, self.sector2 + other.sector2)

    def __sub__(self, other: FjrwNumeric) -> FjrwNumeric:
        return FjrwNumeric(self.sector1 - other.sector1, self.sector2 - other.sector2)

    def __mul__(self, other: Any) -> FjrwNumeric:
        if isinstance(other, FjrwNumeric):
            return FjrwNumeric(self.sector1 * other.sector1, self.sector2 * other.sector2)
        return FjrwNumeric(self.sector1 * other, self.sector2 * other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"FjrwNumeric({list(self.sector1.coeffs)}, {list(self.sector2.coeffs)})"

    def to_json(self) -> dict:
        return {"sector1": self.sector1.to_json(), "sector2": self.sector2.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> FjrwNumeric:
        return cls(NilpotentComplex.from_json(obj["sector1"]), NilpotentComplex.from_json(obj["sector2"]))
