import cmath
import json
from fractions import Fraction

import pytest

from lgcy.exact import (
    ONE,
    ZERO,
    ZETA,
    EisensteinScalar,
    TruncatedSeries,
    eis_inv,
    eis_mul,
    eis_to_complex,
)

E = EisensteinScalar


def test_zeta_squared():
    assert eis_mul(ZETA, ZETA) == E(-1, -1)


def test_one_is_identity():
    x = E(Fraction(3, 7), -2)
    assert eis_mul(ONE, x) == x


def test_one_minus_zeta_squared():
    u = ONE - ZETA
    assert eis_mul(u, u) == E(0, -3)


def test_inverse_examples():
    assert eis_inv(ONE) == ONE
    assert eis_inv(ZETA) == E(-1, -1)
    assert eis_inv(ONE - ZETA) == E(Fraction(2, 3), Fraction(1, 3))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        eis_inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_norm_and_conj():
    x = E(2, 5)
    assert x.norm() == 4 - 10 + 25
    assert x * x.conj() == E(x.norm(), 0)


def test_to_complex():
    assert eis_to_complex(ONE) == 1 + 0j
    z = eis_to_complex(ZETA)
    assert abs(z - cmath.exp(2j * cmath.pi / 3)) < 1e-15
    assert abs(z.real + 0.5) < 1e-16 and abs(z.imag - 0.8660254037844386) < 1e-15
    assert abs(eis_to_complex((ONE - ZETA) ** 6) - (-27)) < 1e-13
    assert (ONE - ZETA) ** 6 == E(-27, 0)


def test_to_complex_high_precision():
    # 200 bits rounds back to the same double
    assert abs(ZETA.to_complex(200) - cmath.exp(2j * cmath.pi / 3)) < 1e-15


def test_powers():
    assert ZETA ** 3 == ONE
    assert ZETA ** -1 == ZETA ** 2
    assert E.zeta_power(-4) == ZETA ** 2
    assert E(2, 1) ** 0 == ONE


def test_json_round_trip():
    x = E(Fraction(-5, 12), Fraction(7, 3))
    obj = x.to_json()
    assert obj == {"a": "-5/12", "b": "7/3"}
    assert E.from_json(json.loads(json.dumps(obj))) == x


def test_huge_integers_stay_exact():
    x = E(10**40 + 1, -(10**39))
    assert (x * x.inv()) == ONE


def test_immutable():
    with pytest.raises(AttributeError):
        ZETA.a = 3  # type: ignore[misc]


def test_coercion_and_mixed_ops():
    assert ZETA + 1 == E(1, 1)
    assert 1 - ZETA == E(1, -1)
    assert ZETA * Fraction(1, 2) == E(0, Fraction(1, 2))
    assert 2 / ZETA == E(-2, -2)


class TestTruncatedSeries:
    def test_generator_nilpotent(self):
        eps = TruncatedSeries.generator(5)
        assert (eps ** 5).is_zero()
        assert not (eps ** 4).is_zero()

    def test_multiplication_truncates(self):
        a = TruncatedSeries([1, 2, 3], order=3)
        b = TruncatedSeries([0, 1, 1], order=3)
        assert list(a * b) == [0, 1, 3]

    def test_exp_of_nilpotent(self):
        eps = TruncatedSeries.generator(4, one=Fraction(1))
        e = eps.exp()
        assert list(e) == [1, 1, Fraction(1, 2), Fraction(1, 6)]

    def test_inverse(self):
        a = TruncatedSeries([Fraction(2), 3, -1, 5], order=4)
        assert a * a.inverse() == TruncatedSeries.constant(1, 4)

    def test_inverse_needs_unit(self):
        with pytest.raises(ZeroDivisionError):
            TruncatedSeries([0, 1], order=2).inverse()

    def test_eisenstein_coefficients(self):
        a = TruncatedSeries([ONE, ZETA], order=2, zero=ZERO)
        b = a * a
        assert b[0] == ONE and b[1] == ZETA * 2
