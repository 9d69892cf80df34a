"""Graded matrix factorizations over sums of line bundles O(k)[l].

Differentials and morphisms are stored as sparse row maps
``{row: {col: terms}}`` where ``terms`` is the raw dict of a
``BigradedPoly``.  Entry (i, j) maps summand j to summand i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .._kernels import sparse_matmul
from .poly import BigradedPoly, monomial_weights
from .potential import Potential

Rows = dict  # {row: {col: {packed_monomial: coeff}}}


class Summand(NamedTuple):
    """The line O(k)[l]."""

    k: int
    l: int

    def __str__(self) -> str:
        return f"O({self.k})[{self.l}]"


class MfError(ValueError):
    """A construction violated a matrix-factorization invariant."""


# ---------------------------------------------------------------- sparse helpers


def rows_from_entries(entries: Iterable[tuple[int, int, BigradedPoly | dict]]) -> Rows:
    """Accumulate (row, col, value) triples, summing repeats and dropping zeros."""
    rows: Rows = {}
    for i, j, v in entries:
        terms = v.terms if isinstance(v, BigradedPoly) else v
        if not terms:
            continue
        row = rows.setdefault(i, {})
        cell = row.get(j)
        if cell is None:
            row[j] = dict(terms)
        else:
            for k, c in terms.items():
                s = cell.get(k, 0) + c
                if s:
                    cell[k] = s
                else:
                    del cell[k]
            if not cell:
                del row[j]
    return {i: r for i, r in rows.items() if r}


def rows_neg(rows: Rows) -> Rows:
    return {i: {j: {k: -c for k, c in t.items()} for j, t in r.items()} for i, r in rows.items()}


def rows_add(a: Rows, b: Rows) -> Rows:
    return rows_from_entries(
        [(i, j, t) for i, r in a.items() for j, t in r.items()]
        + [(i, j, t) for i, r in b.items() for j, t in r.items()]
    )


def rows_transpose(rows: Rows) -> Rows:
    out: Rows = {}
    for i, r in rows.items():
        for j, t in r.items():
            out.setdefault(j, {})[i] = t
    return out


def rows_identity(n: int, offset_row: int = 0, offset_col: int = 0) -> Rows:
    return {offset_row + i: {offset_col + i: {0: 1}} for i in range(n)}


def rows_equal(a: Rows, b: Rows) -> bool:
    return _prune(a) == _prune(b)


def _prune(a: Rows) -> Rows:
    return {i: {j: t for j, t in r.items() if t} for i, r in a.items() if any(r.values())}


def rows_nnz(rows: Rows) -> int:
    return sum(len(r) for r in rows.values())


# ---------------------------------------------------------------- factorizations


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    summands: tuple[Summand, ...]
    rows: Rows
    potential: Potential

    def __len__(self) -> int:
        return len(self.summands)

    def entry(self, i: int, j: int) -> BigradedPoly:
        return BigradedPoly.wrap(self.rows.get(i, {}).get(j, {}))

    def entries(self) -> Iterable[tuple[int, int, BigradedPoly]]:
        for i, r in self.rows.items():
            for j, t in r.items():
                yield i, j, BigradedPoly.wrap(t)

    def columns(self) -> Rows:
        return rows_transpose(self.rows)

    def dense(self) -> list[list[BigradedPoly]]:
        n = len(self.summands)
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def multiset(self) -> dict[Summand, int]:
        out: dict[Summand, int] = {}
        for s in self.summands:
            out[s] = out.get(s, 0) + 1
        return out

    def twists(self) -> set[int]:
        return {s.k for s in self.summands}

    def to_json(self) -> dict:
        return {
            "summands": [[s.k, s.l] for s in self.summands],
            "entries": [
                [i, j, BigradedPoly.wrap(t).to_json()]
                for i in sorted(self.rows)
                for j, t in sorted(self.rows[i].items())
            ],
            "potential": self.potential.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, potential: Potential | None = None) -> MatrixFactorization:
        pot = potential if potential is not None else Potential.from_json(obj["potential"])
        summands = tuple(Summand(int(k), int(l)) for k, l in obj["summands"])
        rows = rows_from_entries(
            (int(i), int(j), BigradedPoly.from_json(poly)) for i, j, poly in obj["entries"]
        )
        return cls(summands, rows, pot)


@dataclass
class ValidationResult:
    ok: bool
    diagnostics: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "diagnostics": self.diagnostics}


def _weight_diagnostics(
    summands: Sequence[Summand], rows: Rows, r_offset: int, only: set | None, limit: int
) -> list[dict]:
    out = []
    for i, r in rows.items():
        for j, t in r.items():
            if only is not None and i not in only and j not in only:
                continue
            want = (summands[i].k - summands[j].k, summands[i].l - summands[j].l + r_offset)
            bad = [monomial_weights(k) for k in t if monomial_weights(k) != want]
            if bad:
                out.append(
                    {"kind": "weight", "row": i, "col": j, "expected": list(want), "found": [list(b) for b in set(bad)]}
                )
                if len(out) >= limit:
                    return out
    return out


def _square_diagnostics(
    d2: Rows, target: dict, check_rows: Iterable[int], limit: int, transpose: bool = False
) -> list[dict]:
    out = []
    for i in check_rows:
        row = d2.get(i, {})
        if row.get(i, {}) != target:
            pos = {"row": i, "col": i}
            out.append({"kind": "d2", **pos, "found": BigradedPoly.wrap(row.get(i, {})).to_json()})
        for k, t in row.items():
            if k != i and t:
                pos = {"row": k, "col": i} if transpose else {"row": i, "col": k}
                out.append({"kind": "d2", **pos, "found": BigradedPoly.wrap(t).to_json()})
        if len(out) >= limit:
            break
    return out


def validate_mf(
    M: MatrixFactorization, subset: Iterable[int] | None = None, limit: int = 50
) -> ValidationResult:
    """Check bihomogeneity of entries and d^2 = W Id.

    With ``subset`` only the rows and columns of d^2 indexed by it are
    recomputed, which suffices after a local change when the rest of the
    matrix was validated before.
    """
    only = None if subset is None else set(subset)
    diags = _weight_diagnostics(M.summands, M.rows, 1, only, limit)
    target = M.potential.W.terms
    n = len(M.summands)
    check = range(n) if only is None else sorted(only)
    d2 = sparse_matmul(M.rows, M.rows, rows=check)
    diags += _square_diagnostics(d2, target, check, limit)
    if only is not None and len(diags) < limit:
        cols = M.columns()
        d2t = sparse_matmul(cols, cols, rows=check)
        diags += _square_diagnostics(d2t, target, check, limit, transpose=True)
    return ValidationResult(not diags, diags[:limit])


def assert_valid(M: MatrixFactorization, subset: Iterable[int] | None = None) -> MatrixFactorization:
    res = validate_mf(M, subset)
    if not res.ok:
        raise MfError(f"not a matrix factorization: {res.diagnostics[:3]}")
    return M


# ---------------------------------------------------------------- Koszul builders


def _koszul(
    n: int,
    wedge: Sequence[BigradedPoly],
    contract: Sequence[BigradedPoly],
    summand_of_degree,
    potential: Potential,
) -> MatrixFactorization:
    """Koszul factorization on the exterior algebra of rank n.

    Basis: subsets of range(n), by size then lexicographically.  Wedge with
    e_i on e_I carries sign (-1)^{#{j in I: j < i}}; contraction removing
    position r of I carries (-1)^r.
    """
    subsets = [c for j in range(n + 1) for c in combinations(range(n), j)]
    index = {s: i for i, s in enumerate(subsets)}
    entries = []
    for col, I in enumerate(subsets):
        for i in range(n):
            if i in I:
                continue
            pos = sum(1 for j in I if j < i)
            J = tuple(sorted(I + (i,)))
            entries.append((index[J], col, wedge[i] * (-1) ** pos))
        for r, i in enumerate(I):
            J = I[:r] + I[r + 1 :]
            entries.append((index[J], col, contract[i] * (-1) ** r))
    summands = tuple(summand_of_degree(len(I)) for I in subsets)
    return MatrixFactorization(summands, rows_from_entries(entries), potential)


def build_koszul_minus(P: Potential, validate: bool = True) -> MatrixFactorization:
    """K_- : exterior algebra of O(1)[-1]^6, d = s_x wedge + s_pf contraction."""
    from .poly import p, x

    sx = [x(i) for i in range(1, 7)]
    spf = [p(1) * P.f[0][i] + p(2) * P.f[1][i] for i in range(6)]
    M = _koszul(6, sx, spf, lambda j: Summand(j, -j), P)
    return assert_valid(M) if validate else M


def build_koszul_plus(P: Potential, validate: bool = True) -> MatrixFactorization:
    """K_+ : exterior algebra of O(-3)[1]^2, d = s_p wedge + s_W contraction."""
    from .poly import p

    M = _koszul(2, [p(1), p(2)], [P.W1, P.W2], lambda j: Summand(-3 * j, j), P)
    return assert_valid(M) if validate else M


# ---------------------------------------------------------------- twists, shifts, cones


def twist_shift(M: MatrixFactorization, a: int, b: int) -> MatrixFactorization:
    """M(a)[b] with the differential left unchanged."""
    return MatrixFactorization(tuple(Summand(s.k + a, s.l + b) for s in M.summands), M.rows, M.potential)


def shift_one(M: MatrixFactorization) -> MatrixFactorization:
    """M[1]: shift every summand and negate the differential."""
    return MatrixFactorization(tuple(Summand(s.k, s.l + 1) for s in M.summands), rows_neg(M.rows), M.potential)


@dataclass(frozen=True, eq=False)
class MfMorphism:
    source: MatrixFactorization
    target: MatrixFactorization
    rows: Rows

    def validate(self, limit: int = 50) -> ValidationResult:
        diags = []
        for i, r in self.rows.items():
            for j, t in r.items():
                si, sj = self.target.summands[i], self.source.summands[j]
                want = (si.k - sj.k, si.l - sj.l)
                if any(monomial_weights(k) != want for k in t):
                    diags.append({"kind": "weight", "row": i, "col": j, "expected": list(want)})
        left = sparse_matmul(self.target.rows, self.rows)
        right = sparse_matmul(self.rows, self.source.rows)
        if not rows_equal(left, right):
            diff = rows_add(left, rows_neg(right))
            for i, r in diff.items():
                for j, t in r.items():
                    diags.append({"kind": "intertwine", "row": i, "col": j, "found": BigradedPoly.wrap(t).to_json()})
        return ValidationResult(not diags, diags[:limit])

    def compose(self, other: MfMorphism) -> MfMorphism:
        """self after other."""
        return MfMorphism(other.source, self.target, sparse_matmul(self.rows, other.rows))


def identity_morphism(M: MatrixFactorization) -> MfMorphism:
    return MfMorphism(M, M, rows_identity(len(M)))


def cone(f: MfMorphism, check: bool = True) -> MatrixFactorization:
    """Cone(f: E1 -> E2) = (E1[1] + E2, [[-d1, 0], [f, d2]])."""
    if check:
        res = f.validate()
        if not res.ok:
            raise MfError(f"morphism does not intertwine the differentials: {res.diagnostics[:3]}")
    E1, E2 = f.source, f.target
    n1 = len(E1)
    entries = [(i, j, t) for i, r in rows_neg(E1.rows).items() for j, t in r.items()]
    entries += [(n1 + i, j, t) for i, r in f.rows.items() for j, t in r.items()]
    entries += [(n1 + i, n1 + j, t) for i, r in E2.rows.items() for j, t in r.items()]
    summands = tuple(Summand(s.k, s.l + 1) for s in E1.summands) + E2.summands
    C = MatrixFactorization(summands, rows_from_entries(entries), E1.potential)
    return assert_valid(C) if check else C


def direct_sum(*Ms: MatrixFactorization) -> MatrixFactorization:
    entries = []
    summands: list[Summand] = []
    off = 0
    for M in Ms:
        entries += [(off + i, off + j, t) for i, r in M.rows.items() for j, t in r.items()]
        summands.extend(M.summands)
        off += len(M)
    return MatrixFactorization(tuple(summands), rows_from_entries(entries), Ms[0].potential)


def zero_mf(P: Potential) -> MatrixFactorization:
    return MatrixFactorization((), {}, P)
