"""Replaceable summands and the replacement M -> M\\A.

Write every arrow into A as p1 delta1_AB + p2 delta2_AB (monomials divisible
by p1 go to delta1, the rest to delta2).  A is replaceable when

  * there are no arrows inside A or inside B (the neighbours of A),
  * every arrow into A vanishes at p = 0,
  * delta_j_AB D_BA = W_j Id_A for j = 1, 2, with D_BA the full arrow A -> B.

For p-linear arrows the last condition is the familiar
delta2_AB delta1_BA = delta1_AB delta2_BA = 0.  Then delta1_AB d_BC is
divisible by p2; call the quotient Z, so that delta2_AB d_BC = -p1 Z.

The replacement swaps A for A(6)[-3] + A(3)[-2]^2 with arrows

    A(3)[-2]_j -> A(6)[-3] : (-W2, W1)_j
    A(6)[-3] -> A(3)[-2]_j : (-p2, p1)_j
    B -> A(3)[-2]_j        : -delta_j_AB
    A(3)[-2]_j -> B        : -D_BA p_j
    C -> A(6)[-3]          : -Z

and leaves the B/C part untouched.  When the arrows are p-linear, Z is
delta1_AB delta2_BC.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .._kernels import sparse_matmul
from .factorization import (
    MatrixFactorization,
    MfError,
    MfMorphism,
    Rows,
    Summand,
    assert_valid,
    cone,
    rows_add,
    rows_equal,
    rows_from_entries,
    rows_identity,
    rows_neg,
    shift_one,
    validate_mf,
)
from .poly import P1_KEY, P2_KEY, BigradedPoly, p_exps

_P = {1: {P1_KEY: 1}, 2: {P2_KEY: 1}}


class NotReplaceableError(MfError):
    pass


@dataclass(frozen=True)
class NotReplaceable:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass
class Decomposition:
    """Blocks of M around a replaceable A; index lists are positions in M."""

    A: list[int]
    B: list[int]
    C: list[int]
    delta_AB: dict[int, Rows]  # j -> rows A x B of delta_j
    d_BA: Rows  # full arrows A -> B, rows in B
    Z: Rows  # rows A x C, delta1_AB d_BC / p2

    def __bool__(self) -> bool:
        return True


def split_into_A(terms: dict) -> tuple[dict, dict, dict]:
    """(d0, delta1, delta2) with terms = d0 + p1 delta1 + p2 delta2."""
    d0: dict = {}
    d1: dict = {}
    d2: dict = {}
    for k, c in terms.items():
        e1, e2 = p_exps(k)
        if e1:
            d1[k - P1_KEY] = c
        elif e2:
            d2[k - P2_KEY] = c
        else:
            d0[k] = c
    return d0, d1, d2


def _divide_by(rows: Rows, pkey: int, j: int) -> Rows | None:
    """Exact division of every entry by p_j, or None if some monomial is not divisible."""
    out: Rows = {}
    for i, r in rows.items():
        for c, t in r.items():
            q = {}
            for k, v in t.items():
                if p_exps(k)[j - 1] == 0:
                    return None
                q[k - pkey] = v
            if q:
                out.setdefault(i, {})[c] = q
    return out


def find_replaceable(M: MatrixFactorization, A: Iterable[int]) -> Decomposition | NotReplaceable:
    A = sorted(set(A))
    n = len(M)
    if not A or any(not 0 <= a < n for a in A):
        return NotReplaceable("A must be a non-empty set of summand indices")
    Aset = set(A)
    cols = M.columns()
    Bset: set[int] = set()
    for a in A:
        for j in M.rows.get(a, {}):
            if j in Aset:
                return NotReplaceable(f"arrow inside A: {j} -> {a}")
            Bset.add(j)
        for i in cols.get(a, {}):
            if i in Aset:
                return NotReplaceable(f"arrow inside A: {a} -> {i}")
            Bset.add(i)
    if not Bset:
        return NotReplaceable("A has no neighbours, so d^2 = W cannot hold on A")
    B = sorted(Bset)
    C = [i for i in range(n) if i not in Aset and i not in Bset]
    for b in B:
        for j in M.rows.get(b, {}):
            if j in Bset:
                return NotReplaceable(f"arrow inside B: {j} -> {b}")

    delta_AB: dict[int, Rows] = {1: {}, 2: {}}
    for a in A:
        for b, t in M.rows.get(a, {}).items():
            d0, d1, d2 = split_into_A(t)
            if d0:
                return NotReplaceable(f"arrow {b} -> {a} into A does not vanish at p = 0")
            if d1:
                delta_AB[1].setdefault(a, {})[b] = d1
            if d2:
                delta_AB[2].setdefault(a, {})[b] = d2
    d_BA: Rows = {}
    d_BC: Rows = {}
    for b in B:
        for c, t in M.rows.get(b, {}).items():
            (d_BA if c in Aset else d_BC).setdefault(b, {})[c] = t

    P = M.potential
    for j in (1, 2):
        prod = sparse_matmul(delta_AB[j], d_BA)
        want = {a: {a: dict(P.Wj(j).terms)} for a in A}
        if not _rows_match(prod, want):
            return NotReplaceable(f"delta{j}_AB D_BA != W{j} Id_A")

    Z = _divide_by(sparse_matmul(delta_AB[1], d_BC), P2_KEY, 2)
    if Z is None:
        return NotReplaceable("delta1_AB d_BC is not divisible by p2")
    lhs = sparse_matmul(delta_AB[2], d_BC)
    rhs = sparse_matmul(Z, {c: {c: {P1_KEY: -1}} for c in C})
    if not _rows_match(lhs, rhs):
        return NotReplaceable("delta2_AB d_BC != -p1 Z")
    return Decomposition(A, B, C, delta_AB, d_BA, Z)


def _rows_match(a: Rows, b: Rows) -> bool:
    strip = lambda r: {i: {j: t for j, t in row.items() if t} for i, row in r.items()}  # noqa: E731
    sa = {i: row for i, row in strip(a).items() if row}
    sb = {i: row for i, row in strip(b).items() if row}
    return sa == sb


@dataclass
class Layout:
    """Positions in M\\A of the kept summands and the new blocks."""

    keep: dict[int, int]  # old index -> new index
    T0: dict[int, int]  # a -> index of its A(6)[-3] copy
    T1: dict[int, dict[int, int]]  # j -> a -> index of its A(3)[-2] copy
    summands: list[Summand] = field(default_factory=list)


def _layout(M: MatrixFactorization, A: list[int]) -> Layout:
    Aset = set(A)
    keep: dict[int, int] = {}
    T0: dict[int, int] = {}
    T1: dict[int, dict[int, int]] = {1: {}, 2: {}}
    out: list[Summand] = []
    first = A[0]
    for i, s in enumerate(M.summands):
        if i == first:
            for a in A:
                sa = M.summands[a]
                T0[a] = len(out)
                out.append(Summand(sa.k + 6, sa.l - 3))
            for j in (1, 2):
                for a in A:
                    sa = M.summands[a]
                    T1[j][a] = len(out)
                    out.append(Summand(sa.k + 3, sa.l - 2))
        if i in Aset:
            continue
        keep[i] = len(out)
        out.append(s)
    return Layout(keep, T0, T1, out)


def _mul(a: dict, b: dict) -> dict:
    return BigradedPoly.wrap(a).__mul__(BigradedPoly.wrap(b)).terms


def _neg(t: dict) -> dict:
    return {k: -c for k, c in t.items()}


def replace_summand(
    M: MatrixFactorization, A: Iterable[int], validate: str = "full"
) -> tuple[MatrixFactorization, Layout, Decomposition]:
    """Build M\\A.  ``validate`` is "full", "local" (rows/cols near A) or "none"."""
    dec = find_replaceable(M, A)
    if not dec:
        raise NotReplaceableError(dec.reason)
    lay = _layout(M, dec.A)
    P = M.potential
    Aset = set(dec.A)
    entries: list[tuple[int, int, dict]] = []
    for i, r in M.rows.items():
        if i in Aset:
            continue
        for j, t in r.items():
            if j in Aset:
                continue
            entries.append((lay.keep[i], lay.keep[j], t))
    w = {1: P.W1.terms, 2: P.W2.terms}
    for a in dec.A:
        t0 = lay.T0[a]
        entries.append((t0, lay.T1[1][a], _neg(w[2])))
        entries.append((t0, lay.T1[2][a], w[1]))
        entries.append((lay.T1[1][a], t0, _neg(_P[2])))
        entries.append((lay.T1[2][a], t0, _P[1]))
    for j in (1, 2):
        for a, r in dec.delta_AB[j].items():
            for b, t in r.items():
                entries.append((lay.T1[j][a], lay.keep[b], _neg(t)))
        for b, r in dec.d_BA.items():
            for a, t in r.items():
                entries.append((lay.keep[b], lay.T1[j][a], _neg(_mul(t, _P[j]))))
    for a, r in dec.Z.items():
        for c, t in r.items():
            entries.append((lay.T0[a], lay.keep[c], _neg(t)))
    N = MatrixFactorization(tuple(lay.summands), rows_from_entries(entries), P)
    if validate == "full":
        assert_valid(N)
    elif validate == "local":
        near = set(lay.T0.values()) | set(lay.T1[1].values()) | set(lay.T1[2].values())
        near |= {lay.keep[b] for b in dec.B}
        assert_valid(N, near)
    return N, lay, dec


# ---------------------------------------------------------------- homotopy witnesses


@dataclass
class Witnesses:
    f: MfMorphism
    cone: MatrixFactorization
    replaced: MatrixFactorization
    F: MfMorphism
    G: MfMorphism
    H: Rows
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def koszul_plus_block(M: MatrixFactorization, A: list[int]) -> MatrixFactorization:
    """A tensor K_+(6)[-2] with summands ordered A(6)[-2], A(3)[-1]^2, A."""
    P = M.potential
    a_n = len(A)
    summands = [Summand(M.summands[a].k + 6, M.summands[a].l - 2) for a in A]
    summands += [Summand(M.summands[a].k + 3, M.summands[a].l - 1) for _ in (1, 2) for a in A]
    summands += [M.summands[a] for a in A]
    y0 = lambda i: i  # noqa: E731
    y1 = lambda j, i: a_n * j + i  # noqa: E731
    y2 = lambda i: 3 * a_n + i  # noqa: E731
    entries = []
    for i in range(a_n):
        entries += [
            (y0(i), y1(1, i), P.W2.terms),
            (y0(i), y1(2, i), _neg(P.W1.terms)),
            (y1(1, i), y0(i), _P[2]),
            (y1(2, i), y0(i), _neg(_P[1])),
            (y2(i), y1(1, i), _P[1]),
            (y2(i), y1(2, i), _P[2]),
            (y1(1, i), y2(i), P.W1.terms),
            (y1(2, i), y2(i), P.W2.terms),
        ]
    return assert_valid(MatrixFactorization(tuple(summands), rows_from_entries(entries), P))


def replacement_witnesses(M: MatrixFactorization, A: Iterable[int]) -> Witnesses:
    """Morphism f: M -> A(x)K_+(6)[-2], its cone, and F, G, H relating it to (M\\A)[1].

    Checks F G = Id, G F - Id = H d + d H, and that f, F, G intertwine.
    """
    N, lay, dec = replace_summand(M, A, validate="full")
    A = dec.A
    a_n, n = len(A), len(M)
    apos = {a: i for i, a in enumerate(A)}
    Y = koszul_plus_block(M, A)
    y0 = lambda a: apos[a]  # noqa: E731
    y1 = lambda j, a: a_n * j + apos[a]  # noqa: E731
    y2 = lambda a: 3 * a_n + apos[a]  # noqa: E731

    f_entries = [(y2(a), a, {0: 1}) for a in A]
    for j in (1, 2):
        for a, r in dec.delta_AB[j].items():
            for b, t in r.items():
                f_entries.append((y1(j, a), b, t))
    for a, r in dec.Z.items():
        for c, t in r.items():
            f_entries.append((y0(a), c, t))
    f = MfMorphism(M, Y, rows_from_entries(f_entries))
    Cf = cone(f)
    # cone summands: M[1] at 0..n-1, then Y at n..
    Nshift = shift_one(N)
    F_entries = [(lay.T0[a], n + y0(a), {0: 1}) for a in A]
    F_entries += [(lay.T1[j][a], n + y1(j, a), {0: 1}) for j in (1, 2) for a in A]
    F_entries += [(new, old, {0: 1}) for old, new in lay.keep.items()]
    for b, r in dec.d_BA.items():
        for a, t in r.items():
            F_entries.append((lay.keep[b], n + y2(a), t))
    F = MfMorphism(Cf, Nshift, rows_from_entries(F_entries))
    G_entries = [(n + y0(a), lay.T0[a], {0: 1}) for a in A]
    G_entries += [(n + y1(j, a), lay.T1[j][a], {0: 1}) for j in (1, 2) for a in A]
    G_entries += [(old, new, {0: 1}) for old, new in lay.keep.items()]
    G_entries += [(a, lay.T1[j][a], _neg(_P[j])) for j in (1, 2) for a in A]
    G = MfMorphism(Nshift, Cf, rows_from_entries(G_entries))
    H = rows_from_entries([(a, n + y2(a), {0: -1}) for a in A])

    FG = sparse_matmul(F.rows, G.rows)
    GF = sparse_matmul(G.rows, F.rows)
    d = Cf.rows
    homotopy = rows_add(sparse_matmul(H, d), sparse_matmul(d, H))
    lhs = rows_add(GF, rows_neg(rows_identity(len(Cf))))
    checks = {
        "f_intertwines": f.validate().ok,
        "F_intertwines": F.validate().ok,
        "G_intertwines": G.validate().ok,
        "FG_identity": rows_equal(FG, rows_identity(len(Nshift))),
        "GF_homotopic_identity": rows_equal(lhs, homotopy),
        "cone_valid": validate_mf(Cf).ok,
        "replaced_valid": validate_mf(N).ok,
    }
    return Witnesses(f, Cf, N, F, G, H, checks)
