"""Sparse polynomials in x1..x6, p1, p2 with G- and R-weights.

Monomials are packed into one integer, ``BITS`` bits per exponent in the order
(x1, ..., x6, p1, p2), so multiplying monomials is adding keys.  Coefficients
are ``int`` where integral and ``Fraction`` otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Mapping

from .._kernels import poly_mul

NVARS = 8
BITS = 12
MASK = (1 << BITS) - 1
VAR_NAMES = ("x1", "x2", "x3", "x4", "x5", "x6", "p1", "p2")
P_SHIFT = 6 * BITS
P_MASK = (1 << (2 * BITS)) - 1


def pack(exps: Iterable[int]) -> int:
    key = 0
    es = list(exps)
    if len(es) != NVARS:
        raise ValueError(f"monomial needs {NVARS} exponents, got {len(es)}")
    for i, e in enumerate(es):
        if not 0 <= e <= MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (BITS * i)
    return key


def unpack(key: int) -> tuple[int, ...]:
    return tuple((key >> (BITS * i)) & MASK for i in range(NVARS))


def x_degree(key: int) -> int:
    return sum((key >> (BITS * i)) & MASK for i in range(6))


def p_degree(key: int) -> int:
    return ((key >> P_SHIFT) & MASK) + ((key >> (P_SHIFT + BITS)) & MASK)


def p_exps(key: int) -> tuple[int, int]:
    return (key >> P_SHIFT) & MASK, (key >> (P_SHIFT + BITS)) & MASK


def monomial_weights(key: int) -> tuple[int, int]:
    """(G-weight, R-weight) of a packed monomial."""
    dp = p_degree(key)
    return x_degree(key) - 3 * dp, 2 * dp


P1_KEY = 1 << P_SHIFT
P2_KEY = 1 << (P_SHIFT + BITS)


def _norm(c: Any) -> int | Fraction:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"unsupported coefficient {c!r}")


class BigradedPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Any] | None = None, *, _trusted: bool = False) -> None:
        if _trusted:
            object.__setattr__(self, "terms", terms)
            return
        clean = {}
        for k, c in (terms or {}).items():
            c = _norm(c)
            if c:
                clean[k] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("BigradedPoly is immutable")

    @classmethod
    def wrap(cls, terms: dict) -> BigradedPoly:
        """Adopt a dict produced by the kernels without copying."""
        return cls(terms, _trusted=True)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: Any = 1) -> BigradedPoly:
        return cls({pack(exps): coeff})

    @classmethod
    def var(cls, name: str) -> BigradedPoly:
        e = [0] * NVARS
        e[VAR_NAMES.index(name)] = 1
        return cls.monomial(e)

    @classmethod
    def constant(cls, c: Any) -> BigradedPoly:
        return cls({0: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BigradedPoly):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> BigradedPoly:
        return BigradedPoly.wrap({k: -c for k, c in self.terms.items()})

    def __add__(self, other: BigradedPoly) -> BigradedPoly:
        if not isinstance(other, BigradedPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BigradedPoly.wrap(out)

    def __sub__(self, other: BigradedPoly) -> BigradedPoly:
        if not isinstance(other, BigradedPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Any) -> BigradedPoly:
        if isinstance(other, BigradedPoly):
            return BigradedPoly.wrap(poly_mul(self.terms, other.terms))
        if isinstance(other, (int, Fraction)):
            c = _norm(other)
            if not c:
                return ZERO_POLY
            return BigradedPoly.wrap({k: _norm(v * c) for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def weights(self) -> set[tuple[int, int]]:
        return {monomial_weights(k) for k in self.terms}

    def is_bihomogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def p_degrees(self) -> set[int]:
        return {p_degree(k) for k in self.terms}

    def p_split(self) -> tuple[BigradedPoly, BigradedPoly, BigradedPoly, BigradedPoly]:
        """(d0, delta1, delta2, rest): self = d0 + p1 delta1 + p2 delta2 + rest.

        d0 collects p-free monomials, delta_j the p-linear ones with p_j divided
        out, ``rest`` the monomials of p-degree >= 2.
        """
        d0, d1, d2, rest = {}, {}, {}, {}
        for k, c in self.terms.items():
            e1, e2 = p_exps(k)
            if e1 + e2 == 0:
                d0[k] = c
            elif e1 == 1 and e2 == 0:
                d1[k - P1_KEY] = c
            elif e1 == 0 and e2 == 1:
                d2[k - P2_KEY] = c
            else:
                rest[k] = c
        return tuple(BigradedPoly.wrap(t) for t in (d0, d1, d2, rest))  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"BigradedPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(VAR_NAMES, unpack(k)) if e
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"exps": list(unpack(k)), "coeff": f"{Fraction(c).numerator}/{Fraction(c).denominator}"}
            for k, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, obj: list[dict]) -> BigradedPoly:
        out: dict[int, Any] = {}
        for mono in obj:
            key = pack(mono["exps"])
            out[key] = out.get(key, 0) + Fraction(str(mono.get("coeff", "1")))
        return cls(out)


ZERO_POLY = BigradedPoly.wrap({})
ONE_POLY = BigradedPoly.constant(1)


def x(i: int) -> BigradedPoly:
    """x_i for i in 1..6."""
    return BigradedPoly.var(f"x{i}")


def p(j: int) -> BigradedPoly:
    """p_j for j in 1, 2."""
    return BigradedPoly.var(f"p{j}")
