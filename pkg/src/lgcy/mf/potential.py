"""Potentials W = p1 W1 + p2 W2 with W_j = sum_i x_i f_ji."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .poly import BigradedPoly, P1_KEY, P2_KEY, ZERO_POLY, monomial_weights, p_degree, x

ENV_POTENTIAL = "LGCY_POTENTIAL"


class PotentialError(ValueError):
    """Malformed potential data."""


@dataclass(frozen=True)
class Potential:
    W1: BigradedPoly
    W2: BigradedPoly
    f: tuple[tuple[BigradedPoly, ...], tuple[BigradedPoly, ...]]

    def __post_init__(self) -> None:
        self.check()

    def check(self) -> None:
        for name, w in (("W1", self.W1), ("W2", self.W2)):
            if w.is_zero():
                raise PotentialError(f"{name} is zero")
            for k in w.terms:
                if p_degree(k) or monomial_weights(k) != (3, 0):
                    raise PotentialError(f"{name} must be a cubic in x only")
        if len(self.f) != 2 or any(len(row) != 6 for row in self.f):
            raise PotentialError("f must be a 2x6 array")
        for j, row in enumerate(self.f, start=1):
            for i, fji in enumerate(row, start=1):
                for k in fji.terms:
                    if p_degree(k) or monomial_weights(k) != (2, 0):
                        raise PotentialError(f"f[{j}][{i}] must be a quadric in x only")
            acc = ZERO_POLY
            for i, fji in enumerate(row, start=1):
                acc = acc + x(i) * fji
            if acc != (self.W1 if j == 1 else self.W2):
                raise PotentialError(f"W{j} != sum_i x_i f_{j}i")

    @property
    def W(self) -> BigradedPoly:
        """p1 W1 + p2 W2."""
        terms = {k + P1_KEY: c for k, c in self.W1.terms.items()}
        for k, c in self.W2.terms.items():
            v = terms.get(k + P2_KEY, 0) + c
            if v:
                terms[k + P2_KEY] = v
        return BigradedPoly.wrap(terms)

    def Wj(self, j: int) -> BigradedPoly:
        return self.W1 if j == 1 else self.W2

    def to_json(self) -> dict:
        return {
            "W1": self.W1.to_json(),
            "W2": self.W2.to_json(),
            "f": [[fji.to_json() for fji in row] for row in self.f],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Potential:
        try:
            W1 = BigradedPoly.from_json(obj["W1"])
            W2 = BigradedPoly.from_json(obj["W2"])
            f = tuple(tuple(BigradedPoly.from_json(m) for m in row) for row in obj["f"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PotentialError(f"malformed potential: {exc}") from exc
        return cls(W1, W2, f)  # type: ignore[arg-type]

    @classmethod
    def load(cls, path: str | os.PathLike) -> Potential:
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise PotentialError(f"cannot read potential file {path}: {exc}") from exc
        return cls.from_json(obj)


def fermat_split() -> Potential:
    """W1 = x1^3+x2^3+x3^3, W2 = x4^3+x5^3+x6^3, f_ji = x_i^2 on its block."""
    sq = [x(i) * x(i) for i in range(1, 7)]
    f1 = tuple(sq[i] if i < 3 else ZERO_POLY for i in range(6))
    f2 = tuple(sq[i] if i >= 3 else ZERO_POLY for i in range(6))
    W1 = sq[0] * x(1) + sq[1] * x(2) + sq[2] * x(3)
    W2 = sq[3] * x(4) + sq[4] * x(5) + sq[5] * x(6)
    return Potential(W1, W2, (f1, f2))


def default_potential() -> Potential:
    """Potential from ``$LGCY_POTENTIAL`` if set, else the Fermat split."""
    path = os.environ.get(ENV_POTENTIAL)
    if path:
        return Potential.load(path)
    return fermat_split()
