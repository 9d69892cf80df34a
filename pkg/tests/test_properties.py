"""Randomized invariants; each runs at least 10^3 hypothesis examples (see conftest)."""

from collections import Counter
from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from lgcy.cohomology import FjrwClass, GwClass, ch_kminus, fjrw_ch_line, gw_exp, todd_inverse_narrow
from lgcy.exact import ONE, EisensteinScalar, TruncatedSeries
from lgcy.mf.factorization import Summand
from lgcy.mf.window import LedgerEntry, WindowLedger
from lgcy.mirror import apply_mirror, build_mirror_map

CALLS: Counter = Counter()

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
eis = st.builds(EisensteinScalar, rationals, rationals)
nonzero_eis = eis.filter(bool)
gw = st.lists(eis, min_size=4, max_size=4).map(GwClass)
fjrw = st.lists(eis, min_size=4, max_size=4).map(lambda c: FjrwClass(*c))


# ---------------------------------------------------------------- Q(zeta)


@given(eis, eis, eis)
def test_field_associativity_distributivity(x, y, z):
    CALLS["field_axioms"] += 1
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero_eis)
def test_field_inverse(x):
    CALLS["field_inverse"] += 1
    assert x * x.inv() == ONE
    assert x / x == ONE


@given(eis, eis)
def test_conjugation_automorphism(x, y):
    CALLS["conj_automorphism"] += 1
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert x.conj().conj() == x


@given(eis, eis)
def test_to_complex_homomorphism(x, y):
    CALLS["to_complex_hom"] += 1
    a, b = x.to_complex(), y.to_complex()
    bound = 1e-13 * (1 + abs(a)) * (1 + abs(b))
    assert abs((x * y).to_complex() - a * b) <= bound
    assert abs((x + y).to_complex() - (a + b)) <= bound


# ---------------------------------------------------------------- truncated series


@st.composite
def nilpotent_pairs(draw):
    order = draw(st.integers(1, 6))
    coeffs = st.lists(rationals, min_size=order - 1, max_size=order - 1)
    a = TruncatedSeries([Fraction(0)] + draw(coeffs), order, Fraction(0))
    b = TruncatedSeries([Fraction(0)] + draw(coeffs), order, Fraction(0))
    return a, b


@given(nilpotent_pairs())
def test_series_exp_additive(pair):
    CALLS["series_exp_additive"] += 1
    a, b = pair
    assert a.exp() * b.exp() == (a + b).exp()
    assert (a ** a.order).is_zero()


# ---------------------------------------------------------------- GW ring


@given(gw, gw, gw)
def test_gw_ring_axioms(a, b, c):
    CALLS["gw_ring_axioms"] += 1
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (GwClass.p() ** 4 * a).is_zero()


@given(gw)
def test_gw_inverse(c):
    CALLS["gw_inverse"] += 1
    assume(c[0])
    assert c * c.inverse() == GwClass([1])


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_gw_exp_additive(a, b):
    CALLS["gw_exp_additive"] += 1
    assert gw_exp(a) * gw_exp(b) == gw_exp(a + b)


@given(st.integers(-30, 30), gw)
def test_dimension_reason(k, c):
    CALLS["one_minus_exp_sixth"] += 1
    # 1 - e^{kp} has no constant term, so any sixth power vanishes mod p^4
    assert (((GwClass([1]) - gw_exp(k)) * c) ** 6).is_zero()
    assert ((GwClass([1]) - gw_exp(1)) ** 6).is_zero()


# ---------------------------------------------------------------- FJRW ring


@given(fjrw, fjrw, fjrw)
def test_fjrw_ring_axioms(a, b, c):
    CALLS["fjrw_ring_axioms"] += 1
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(fjrw, fjrw)
def test_sector_orthogonality(a, b):
    CALLS["sector_orthogonality"] += 1
    u1, u2 = FjrwClass.unit(1), FjrwClass.unit(2)
    assert (u1 * a) * (u2 * b) == FjrwClass()
    assert u1 * a + u2 * a == a
    assert (FjrwClass.hyperplane(1) * a) * (FjrwClass.hyperplane(1) * b) == FjrwClass()


@given(st.integers(-300, 300), st.integers(-5, 5))
def test_grr_and_line_multiplicativity(q, m):
    CALLS["grr_factorization"] += 1
    assert ch_kminus(q, m) == fjrw_ch_line(-q - 6, m - 6) * todd_inverse_narrow()
    assert fjrw_ch_line(q + 3, m) == fjrw_ch_line(q, m) * fjrw_ch_line(3, 0)


# ---------------------------------------------------------------- mirror map


@given(st.integers(-8, 8), fjrw, fjrw, eis, eis)
def test_apply_mirror_linear(l, x, y, a, b):
    CALLS["mirror_linear"] += 1
    u = build_mirror_map(l)
    assert apply_mirror(u, x * a + y * b) == apply_mirror(u, x) * a + apply_mirror(u, y) * b


# ---------------------------------------------------------------- ledger replay


@st.composite
def ledgers_on_multisets(draw):
    """A random summand multiset and a ledger whose removals are always available."""
    cur = Counter()
    for _ in range(draw(st.integers(1, 6))):
        cur[Summand(draw(st.integers(-3, 3)), draw(st.integers(-4, 2)))] += draw(st.integers(1, 4))
    initial = dict(cur)
    entries = []
    for step in range(draw(st.integers(0, 8))):
        present = sorted(s for s, n in cur.items() if n)
        if not present:
            break
        s = draw(st.sampled_from(present))
        m = draw(st.integers(1, cur[s]))
        entries.append(LedgerEntry(step, s.k, s.l, m))
        cur[s] -= m
        cur[Summand(s.k + 3, s.l - 2)] += 2 * m
        cur[Summand(s.k + 6, s.l - 3)] += m
    return initial, WindowLedger(entries), {s: n for s, n in cur.items() if n}


@given(ledgers_on_multisets(), st.integers(0, 8))
def test_ledger_replay_conservation(case, cut):
    CALLS["ledger_conservation"] += 1
    initial, ledger, final = case
    out = ledger.replay(initial)
    assert out == final
    # each block O(k)[n]^m becomes 3m summands
    added = sum(2 * e.multiplicity for e in ledger.entries)
    assert sum(out.values()) == sum(initial.values()) + added
    # replay is compatible with splitting the ledger
    head, tail = WindowLedger(ledger.entries[:cut]), WindowLedger(ledger.entries[cut:])
    assert tail.replay(head.replay(initial)) == out
