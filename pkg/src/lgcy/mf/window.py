"""Window pushing and the two routes to ch(Orl_t(K_-(q)[m])).

Pushing from window [t-1, t+4] to [t, t+5] replaces the blocks O(t-1)[n]^m in
strictly decreasing n.  Each replacement is recorded in a ``WindowLedger``;
on the Calabi-Yau side a block O(t')[n]^m contributes -m (-1)^n e^{(t'+6)p}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple

from ..cohomology import GwClass, gw_exp
from ..mirror import RangeError, register_orlov_route
from .factorization import MatrixFactorization, MfError, Summand, assert_valid, build_koszul_minus
from .potential import Potential, default_potential
from .replace import NotReplaceableError, find_replaceable, replace_summand


class LedgerEntry(NamedTuple):
    step: int
    twist: int
    shift: int
    multiplicity: int


@dataclass
class WindowLedger:
    entries: list[LedgerEntry] = field(default_factory=list)

    def blocks(self) -> list[tuple[int, int, int]]:
        return [(e.twist, e.shift, e.multiplicity) for e in self.entries]

    def extend(self, other: WindowLedger) -> WindowLedger:
        return WindowLedger(self.entries + other.entries)

    def replay(self, initial: dict[Summand, int]) -> dict[Summand, int]:
        """Apply the recorded substitutions to a summand multiset."""
        cur = dict(initial)
        for e in self.entries:
            s = Summand(e.twist, e.shift)
            have = cur.get(s, 0)
            if have < e.multiplicity:
                raise MfError(f"ledger removes {e.multiplicity} x {s} but only {have} present")
            cur[s] = have - e.multiplicity
            for add, mult in (
                (Summand(e.twist + 3, e.shift - 2), 2 * e.multiplicity),
                (Summand(e.twist + 6, e.shift - 3), e.multiplicity),
            ):
                cur[add] = cur.get(add, 0) + mult
        return {s: m for s, m in cur.items() if m}

    def chern(self) -> GwClass:
        """Sum of -m (-1)^n e^{(t'+6)p} over the recorded blocks."""
        out = GwClass()
        for e in self.entries:
            sign = -1 if e.shift % 2 else 1
            out = out - gw_exp(e.twist + 6) * (sign * e.multiplicity)
        return out

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.entries]

    @classmethod
    def from_json(cls, obj: Iterable[Iterable[int]]) -> WindowLedger:
        return cls([LedgerEntry(*map(int, e)) for e in obj])


def window_push(
    M: MatrixFactorization, t: int, step: int = 0, validate: str = "local"
) -> tuple[MatrixFactorization, WindowLedger]:
    """Replace every summand of twist < t until all twists lie in [t, t+5].

    ``validate`` is passed to each replacement; the final object is always
    checked in full.
    """
    if any(s.k > t + 5 for s in M.summands):
        raise MfError(f"summands above window [{t}, {t + 5}] would need a downward push")
    ledger = WindowLedger()
    while True:
        low = [s.k for s in M.summands if s.k < t]
        if not low:
            break
        tw = min(low)
        shifts = sorted({s.l for s in M.summands if s.k == tw}, reverse=True)
        for n in shifts:
            A = [i for i, s in enumerate(M.summands) if s == (tw, n)]
            if tw + 6 > t + 5 or tw + 3 < t:
                raise MfError(f"block O({tw})[{n}] would land outside [{t}, {t + 5}]")
            dec = find_replaceable(M, A)
            if not dec:
                raise NotReplaceableError(f"O({tw})[{n}]: {dec.reason}")
            M, _, _ = replace_summand(M, A, validate=validate)
            ledger.entries.append(LedgerEntry(step, tw, n, len(A)))
    assert_valid(M)
    return M, ledger


def _potential_key(P: Potential) -> str:
    return json.dumps(P.to_json(), sort_keys=True)


class _WindowCache:
    """K_- pushed through windows 1, 2, ...; one sequence per potential."""

    def __init__(self) -> None:
        self._seq: dict[str, list[tuple[MatrixFactorization, WindowLedger]]] = {}

    def get(self, w: int, P: Potential) -> tuple[MatrixFactorization, WindowLedger]:
        key = _potential_key(P)
        seq = self._seq.setdefault(key, [])
        if not seq:
            seq.append((build_koszul_minus(P), WindowLedger()))
        while len(seq) <= w:
            M, led = seq[-1]
            nxt, step_led = window_push(M, len(seq), step=len(seq))
            seq.append((nxt, led.extend(step_led)))
        return seq[w]

    def clear(self) -> None:
        self._seq.clear()


window_cache = _WindowCache()

# ledgers alone are enough for Chern characters; worker processes get these
# seeded instead of rebuilding the factorizations
_ledger_seed: dict[tuple[str, int], WindowLedger] = {}


def seed_ledger(w: int, ledger: WindowLedger, P: Potential | None = None) -> None:
    _ledger_seed[(_potential_key(P if P is not None else default_potential()), w)] = ledger


def window_ledger(w: int, P: Potential | None = None) -> WindowLedger:
    """Full ledger of the pushes from K_- up to window w."""
    if w < 1:
        raise RangeError(f"window index must be >= 1, got {w}")
    P = P if P is not None else default_potential()
    hit = _ledger_seed.get((_potential_key(P), w))
    if hit is not None:
        return hit
    return orlov_object(w, P)[1]


def orlov_object(w: int, P: Potential | None = None) -> tuple[MatrixFactorization, WindowLedger]:
    """Orl_w(K_-) as a factorization with twists in [w, w+5], plus its full ledger."""
    if w < 1:
        raise RangeError(f"window index must be >= 1, got {w}")
    return window_cache.get(w, P if P is not None else default_potential())


def orlov_chern_ledger(t: int, q: int, m: int, P: Potential | None = None) -> GwClass:
    """ch(Orl_t(K_-(q)[m])) = (-1)^m e^{qp} ch(Orl_{t-q}(K_-)) from the ledger."""
    if t - q < 1:
        raise RangeError(f"ledger route needs t - q >= 1, got t={t}, q={q}")
    ch = window_ledger(t - q, P).chern() * gw_exp(q)
    return -ch if m % 2 else ch


def orlov_chern_closed(t: int, q: int, m: int) -> GwClass:
    """(-1)^m sum_{t-3<=s<=t+2, s=q mod 3} (s-q)/3 sum_k (-1)^{k+1} C(6,k) e^{(k+s+3)p}."""
    out = GwClass()
    for s in range(t - 3, t + 3):
        if (s - q) % 3:
            continue
        c = Fraction(s - q, 3)
        for k in range(0, t - s + 3):
            out = out + gw_exp(k + s + 3) * (c * (-1) ** (k + 1) * comb(6, k))
    return -out if m % 2 else out


ORL1_CHERN = -gw_exp(6)

register_orlov_route("ledger", orlov_chern_ledger)
register_orlov_route("closed", orlov_chern_closed)
