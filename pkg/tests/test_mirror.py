from fractions import Fraction
from math import comb

import mpmath
import pytest

from lgcy.cohomology import FjrwClass, GwClass, ch_kminus, gw_exp
from lgcy.exact import ONE, ZETA, EisensteinScalar
from lgcy.mirror import (
    MirrorMap,
    RangeError,
    apply_mirror,
    build_mirror_map,
    build_mirror_map_matrix,
    check_elem_identities,
    check_main_theorem,
    elem2_rhs,
    kminus_image_closed,
    slope_line_residual,
)

E = EisensteinScalar


def _oracle_columns(l: int) -> list[list[complex]]:
    """Taylor coefficients in p of the four columns, from mpmath at 40 digits."""
    with mpmath.workdps(40):
        cols = []
        for k in (1, 2):
            zk = mpmath.exp(2j * mpmath.pi * k / 3)

            def x(p, zk=zk):
                return zk * mpmath.exp(p)

            def h(p):
                return x(p) ** l / (1 - x(p)) / 3

            def u(p):
                return mpmath.mpf(l) / 9 * x(p) ** l / (1 - x(p)) + x(p) ** (l + 1) / (1 - x(p)) ** 2 / 9

            cols.append([complex(c) for c in mpmath.taylor(u, 0, 3)])
            cols.append([complex(c) for c in mpmath.taylor(h, 0, 3)])
        return cols


@pytest.mark.parametrize("l", [-3, 0, 1, 2, 7])
def test_columns_against_numeric_oracle(l):
    u = build_mirror_map(l)
    for got, want in zip(u.columns, _oracle_columns(l)):
        for a, b in zip(got.to_complex(), want):
            assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


def test_l0_h1_constant_term():
    u = build_mirror_map(0)
    assert u.columns[1][0] == E(Fraction(2, 9), Fraction(1, 9))


@pytest.mark.parametrize("l", range(-4, 5))
def test_h_column_times_denominator(l):
    u = build_mirror_map(l)
    x = gw_exp(1) * ZETA
    assert u.columns[1] * (GwClass([1]) - x) == (x ** l) * Fraction(1, 3)


@pytest.mark.parametrize("l", range(-4, 5))
def test_shift_in_l(l):
    a, b = build_mirror_map(l), build_mirror_map(l + 1)
    for k, idx in ((1, 1), (2, 3)):
        assert b.columns[idx] == a.columns[idx] * gw_exp(1) * ZETA ** k


def test_matrix_form_agrees():
    for l in range(-10, 11):
        assert build_mirror_map_matrix(l) == build_mirror_map(l)


def test_apply_examples():
    u = build_mirror_map(0)
    assert apply_mirror(u, FjrwClass()).is_zero()
    x = gw_exp(1) * ZETA
    assert apply_mirror(u, FjrwClass.hyperplane(1)) == (GwClass([1]) - x).inverse() * Fraction(1, 3)


@pytest.mark.parametrize("l", range(-3, 4))
def test_kminus_image_closed_form(l):
    u = build_mirror_map(l)
    for q in range(-6, 7):
        for m in (0, 1):
            assert apply_mirror(u, ch_kminus(q, m)) == kminus_image_closed(l, q, m)


def test_elem_identities_origin():
    r = check_elem_identities(0, 0)
    assert r.passed and all(r.detail["identities"].values())


def test_elem2_window_width():
    # at (l, q) = (0, 0) only s = 0 and s = 3 lie in [l, l+4] with s = q mod 3
    expected = gw_exp(0)
    for k in range(4):
        expected = expected + gw_exp(k) * ((-1) ** (3 - k) * comb(5, 3 - k))
    assert elem2_rhs(0, 0) == expected
    assert elem2_rhs(0, 0) != expected + gw_exp(6) * -1


def test_slope_lines_vanish():
    for l in range(-5, 6):
        for m in range(0, 3):
            for t in range(-2, 5):
                assert slope_line_residual(l, m, t).is_zero()


def test_main_theorem_examples():
    r = check_main_theorem(4, 0, 0)
    assert r.passed
    assert r.rhs == -gw_exp(3)
    r1 = check_main_theorem(4, 0, 1)
    assert r1.lhs == -r.lhs and r1.rhs == -r.rhs
    assert check_main_theorem(4, 0, 0, "closed").passed


def test_main_theorem_range_error():
    with pytest.raises(RangeError):
        check_main_theorem(4, 1, 0)
    # the closed route has no range restriction
    assert check_main_theorem(4, 1, 0, "closed").passed


def test_main_theorem_wrong_window_fails():
    wrong = build_mirror_map(5)
    assert not check_main_theorem(4, 0, 0, mirror=MirrorMap(4, wrong.columns)).passed


def test_perturbed_map_fails():
    u = build_mirror_map(6).perturbed(1, 2)
    assert not check_main_theorem(6, 0, 0, mirror=u).passed


def test_report_json():
    obj = check_main_theorem(5, 1, 1).to_json()
    assert obj["pass"] is True
    assert obj["params"] == {"t": 5, "q": 1, "m": 1, "method": "ledger"}
    assert GwClass.from_json(obj["lhs"]) == GwClass.from_json(obj["rhs"])


def test_mirror_map_json():
    u = build_mirror_map(2)
    obj = u.to_json()
    assert obj["l"] == 2 and len(obj["columns"]) == 4
    assert [GwClass.from_json(c) for c in obj["columns"]] == list(u.columns)


def test_zeta_is_exact():
    # the whole map lives in Q(zeta): conjugating sector 1 gives sector 2
    u = build_mirror_map(3)
    for a, b in ((0, 2), (1, 3)):
        assert GwClass([c.conj() for c in u.columns[a]]) == u.columns[b]
    assert ONE == ZETA ** 3
