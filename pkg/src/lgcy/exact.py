"""Exact scalars: rationals, the Eisenstein field Q(zeta_3), truncated series.

Rationals are ``fractions.Fraction``.  ``EisensteinScalar`` stores a + b*zeta
with zeta**2 = -1 - zeta.  ``TruncatedSeries`` is a polynomial in a nilpotent
generator eps with eps**order = 0, generic over any scalar ring that supports
``+``, ``-``, ``*`` and division by an ``int``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

Rational = Fraction

_SQRT3_2 = math.sqrt(3.0) / 2.0


def as_rational(x: Any) -> Fraction:
    """Coerce int, Fraction or a "num/den" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def rational_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class EisensteinScalar:
    """Element a + b*zeta of Q(zeta) with zeta = exp(2*pi*i/3)."""

    __slots__ = ("a", "b")

    def __init__(self, a: Any = 0, b: Any = 0) -> None:
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "b", as_rational(b))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("EisensteinScalar is immutable")

    @classmethod
    def zeta_power(cls, k: int) -> EisensteinScalar:
        k %= 3
        if k == 0:
            return ONE
        if k == 1:
            return ZETA
        return ZETA2

    @classmethod
    def coerce(cls, x: Any) -> EisensteinScalar:
        if isinstance(x, EisensteinScalar):
            return x
        return cls(as_rational(x), 0)

    def __repr__(self) -> str:
        return f"EisensteinScalar({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*z"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*z"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EisensteinScalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __neg__(self) -> EisensteinScalar:
        return EisensteinScalar(-self.a, -self.b)

    def __add__(self, other: Any) -> EisensteinScalar:
        if isinstance(other, EisensteinScalar):
            return EisensteinScalar(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Any) -> EisensteinScalar:
        if isinstance(other, EisensteinScalar):
            return EisensteinScalar(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other: Any) -> EisensteinScalar:
        return (-self) + other

    def __mul__(self, other: Any) -> EisensteinScalar:
        if isinstance(other, EisensteinScalar):
            # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2, z^2 = -1 - z
            bd = self.b * other.b
            return EisensteinScalar(
                self.a * other.a - bd, self.a * other.b + self.b * other.a - bd
            )
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> EisensteinScalar:
        """Complex conjugation, zeta -> zeta**2 = -1 - zeta."""
        return EisensteinScalar(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inv(self) -> EisensteinScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        c = self.conj()
        return EisensteinScalar(c.a / n, c.b / n)

    def __truediv__(self, other: Any) -> EisensteinScalar:
        if isinstance(other, EisensteinScalar):
            return self * other.inv()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return EisensteinScalar(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other: Any) -> EisensteinScalar:
        return EisensteinScalar.coerce(other) * self.inv()

    def __pow__(self, n: int) -> EisensteinScalar:
        if n < 0:
            return self.inv() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_complex(self, precision: int = 53) -> complex:
        """Embed via zeta -> -1/2 + i*sqrt(3)/2.

        ``precision`` above 53 bits is served by mpmath and the result is
        returned as an ``mpmath.mpc``.
        """
        if precision <= 53:
            return complex(float(self.a) - 0.5 * float(self.b), _SQRT3_2 * float(self.b))
        import mpmath

        with mpmath.workprec(precision):
            a = mpmath.mpf(self.a.numerator) / self.a.denominator
            b = mpmath.mpf(self.b.numerator) / self.b.denominator
            return mpmath.mpc(a - b / 2, mpmath.sqrt(3) / 2 * b)

    def to_json(self) -> dict:
        return {"a": rational_to_json(self.a), "b": rational_to_json(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> EisensteinScalar:
        return cls(Fraction(obj["a"]), Fraction(obj["b"]))


ZERO = EisensteinScalar(0, 0)
ONE = EisensteinScalar(1, 0)
ZETA = EisensteinScalar(0, 1)
ZETA2 = EisensteinScalar(-1, -1)


def eis_mul(x: EisensteinScalar, y: EisensteinScalar) -> EisensteinScalar:
    return x * y


def eis_inv(x: EisensteinScalar) -> EisensteinScalar:
    return x.inv()


def eis_to_complex(x: EisensteinScalar, precision: int = 53) -> complex:
    return x.to_complex(precision)


class TruncatedSeries:
    """c_0 + c_1 eps + ... + c_{n-1} eps^{n-1} with eps^n = 0.

    ``zero`` is the additive identity of the scalar ring; scalars only need
    ring operations plus division by ``int`` (for ``exp``) and, for
    ``inverse``, an invertible constant term.
    """

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Iterable[Any], order: int | None = None, zero: Any = 0) -> None:
        cs = list(coeffs)
        if order is None:
            order = len(cs)
        if order < 1:
            raise ValueError("order must be positive")
        cs = cs[:order] + [zero] * (order - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def _like(self, coeffs: Sequence[Any]) -> TruncatedSeries:
        return type(self)(coeffs, self.order, self.zero)

    @classmethod
    def constant(cls, c: Any, order: int, zero: Any = 0) -> TruncatedSeries:
        return cls([c], order, zero)

    @classmethod
    def generator(cls, order: int, one: Any = 1, zero: Any = 0) -> TruncatedSeries:
        """The nilpotent eps itself."""
        return cls([zero, one], order, zero)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __getitem__(self, i: int) -> Any:
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and all(
                x == y for x, y in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, (int, Fraction, EisensteinScalar, complex, float)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other: Any) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise ValueError("series orders differ")
            return other
        if isinstance(other, (int, Fraction, EisensteinScalar, complex, float)):
            return self._like([other])
        return None

    def __neg__(self) -> TruncatedSeries:
        return self._like([-c for c in self.coeffs])

    def __add__(self, other: Any) -> TruncatedSeries:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._like([x + y for x, y in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other: Any) -> TruncatedSeries:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._like([x - y for x, y in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other: Any) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: Any) -> TruncatedSeries:
        if isinstance(other, (int, Fraction, EisensteinScalar, complex, float)):
            return self._like([c * other for c in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.order
        out = [self.zero] * n
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j in range(n - i):
                y = o.coeffs[j]
                if y != 0:
                    out[i + j] = out[i + j] + x * y
        return self._like(out)

    def __rmul__(self, other: Any) -> TruncatedSeries:
        if isinstance(other, (int, Fraction, EisensteinScalar, complex, float)):
            return self._like([other * c for c in self.coeffs])
        return NotImplemented

    def __truediv__(self, other: Any) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self._like([c / other for c in self.coeffs])

    def __rtruediv__(self, other: Any) -> TruncatedSeries:
        return self.inverse() * other

    def __pow__(self, n: int) -> TruncatedSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = self._like([self.zero + 1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def nilpotent_part(self) -> TruncatedSeries:
        return self._like([self.zero] + list(self.coeffs[1:]))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def inverse(self) -> TruncatedSeries:
        """Geometric expansion 1/(c0 + N) = sum (-N)^k / c0^(k+1)."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
        u = self.nilpotent_part() * inv0
        term = self._like([inv0])
        total = term
        for _ in range(1, self.order):
            term = -(term * u)
            total = total + term
        return total

    def exp(self) -> TruncatedSeries:
        """exp of a series with zero constant term (finite sum)."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs zero constant term on the exact side")
        one = self.zero + 1
        total = self._like([one])
        term = total
        for k in range(1, self.order):
            term = (term * self) * Fraction(1, k)
            total = total + term
        return total
