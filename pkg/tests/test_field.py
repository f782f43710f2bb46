import pytest

from shalika.field import (Field, FqElem, UnityRoot, additive_character,
                           field_from_spec, mult_character)


def test_prime_field_tables():
    f = Field(3)
    assert f.add(1, 2) == 0
    assert f.mul(2, 2) == 1
    assert f.neg(1) == 2
    assert f.inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def brute_f4_mul(a, b):
    # independent oracle: polynomial multiplication mod x^2 + x + 1 over F_2,
    # codes are (c0 + 2*c1)
    a0, a1 = a & 1, a >> 1
    b0, b1 = b & 1, b >> 1
    c0 = a0 * b0
    c1 = a0 * b1 + a1 * b0
    c2 = a1 * b1
    # x^2 = x + 1
    return ((c0 + c2) % 2) + 2 * ((c1 + c2) % 2)


def test_f4_against_brute_force():
    f = Field(2, 2)
    for a in range(4):
        for b in range(4):
            assert f.mul(a, b) == brute_f4_mul(a, b)
    # x has trace 1 in F_4
    assert f.trace(2) == 1
    assert f.trace(1) == 0


def test_f9_field():
    f = Field(3, 2)
    assert f.q == 9
    for a in range(1, 9):
        assert f.mul(a, f.inv(a)) == 1
    # multiplicative group is cyclic of order 8
    orders = {f._order(a) for a in range(1, 9)}
    assert max(orders) == 8


def test_generator_is_least():
    assert Field(3).generator == 2
    assert Field(5).generator == 2
    assert Field(7).generator == 3


def test_field_from_spec():
    assert field_from_spec("3").q == 3
    assert field_from_spec("2^2").q == 4
    assert field_from_spec(9).q == 9
    assert field_from_spec("3") is field_from_spec("3")
    with pytest.raises(ValueError):
        field_from_spec(6)


def test_elem_arithmetic():
    f = Field(5)
    a, b = f.elem(2), f.elem(4)
    assert (a + b).code == 1
    assert (a * b).code == 3
    assert (-a).code == 3
    assert (a ** 4).code == 1
    assert a.inverse().code == 3


def test_unity_root():
    z = UnityRoot("1/3")
    assert (z * z * z).is_one
    assert z.inverse() == z ** 2
    assert UnityRoot(0).is_one
    assert not z.is_one


def test_additive_character():
    f = Field(3)
    # exponent Tr(c*a)/p
    assert additive_character(f.elem(1)).exponent.denominator == 3
    assert additive_character(f.elem(0)).is_one
    assert additive_character(f.elem(1), c=2) == additive_character(f.elem(2))
    with pytest.raises(ValueError):
        additive_character(f.elem(1), c=0)
    # the character is nontrivial somewhere for every c
    for c in (1, 2):
        assert any(not additive_character(f.elem(a), c).is_one
                   for a in range(3))


def test_mult_character():
    f = Field(3)
    # dlog against the fixed generator 2: dlog(2) = 1, exponent 1/(q-1)
    assert str(mult_character(f.elem(2), 1).exponent) == "1/2"
    with pytest.raises(ZeroDivisionError):
        mult_character(f.elem(0), 1)
    f2 = Field(2)
    assert mult_character(f2.elem(1), 1).is_one


def test_character_homomorphism():
    f = Field(7)
    for a in range(7):
        for b in range(7):
            lhs = additive_character(f.elem(a)) * additive_character(f.elem(b))
            assert lhs == additive_character(f.elem(a) + f.elem(b))
    for a in range(1, 7):
        for b in range(1, 7):
            lhs = mult_character(f.elem(a), 2) * mult_character(f.elem(b), 2)
            assert lhs == mult_character(f.elem(a) * f.elem(b), 2)
