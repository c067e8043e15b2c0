import pytest

from lambdaforge.coefficients import (
    INTEGERS,
    KO_EVEN,
    KO_BR,
    KO_ONE,
    KO_XI,
    IntegersMod,
    KOElement,
    PrimeField,
    is_prime,
)
from lambdaforge.errors import TorsionCoefficients


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_integers_basics():
    r = INTEGERS
    assert r.add(2, 3) == 5
    assert r.divide_exact_int(-6, 3) == -2
    with pytest.raises(ValueError):
        r.divide_exact_int(5, 2)
    assert r.divisible_by_int(12, 3)
    assert not r.divisible_by_int(13, 3)
    assert r.is_unit(-1) and not r.is_unit(2)


def test_integers_mod():
    r = IntegersMod(6)
    assert r.from_int(-1) == 5
    assert r.add(4, 5) == 3
    assert r.is_unit(5) and not r.is_unit(2)
    # 2 in 3R since gcd(3,6)=3 divides... 2 is not: 2 % 3 != 0
    assert not r.divisible_by_int(2, 3)
    assert r.divisible_by_int(3, 3)
    with pytest.raises(TorsionCoefficients):
        r.divide_exact_int(4, 2)
    assert r.divide_exact_int(3, 5) == (3 * pow(5, -1, 6)) % 6


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(6)
    assert PrimeField(3).invert_unit(2) == 2


def test_ko_rewrite_xi_squared():
    assert KO_EVEN.mul(KO_XI, KO_XI) == KOElement((((0, 1), 4),))  # xi^2 = 4*bR


def test_ko_normal_form_exponent_bound():
    # products never carry xi-exponent 2 in normal form
    x = KO_EVEN.mul(KO_XI, KO_EVEN.mul(KO_XI, KO_XI))
    assert all(a <= 1 for (a, _), _ in x.terms)
    assert x == KOElement((((1, 1), 4),))  # xi^3 = 4*xi*bR


def test_ko_degrees():
    assert KO_XI.degree() == -4
    assert KO_BR.degree() == -8
    assert KO_EVEN.mul(KO_XI, KO_BR).degree() == -12
    mixed = KO_EVEN.add(KO_XI, KO_ONE)
    assert mixed.degree() is None


def test_ko_divisibility():
    four_br = KO_EVEN.mul(KO_XI, KO_XI)
    assert KO_EVEN.divide_exact_int(four_br, 2) == KOElement((((0, 1), 2),))
    assert KO_EVEN.divisible_by_int(four_br, 2)
    with pytest.raises(ValueError):
        KO_EVEN.divide_exact_int(KO_XI, 2)
