from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from nashfan.coeff import QQ, FieldSpec, is_prime, reduce_mod_p
from nashfan.errors import DenominatorNotInvertible, DivisionByZero, FieldMismatch, NotPrime

PRIMES = [2, 3, 5, 7, 11, 101]

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


@pytest.mark.parametrize("q, p, expected", [(-4, 2, 0), (-4, 5, 1), (6, 3, 0), (Fraction(1, 2), 3, 2)])
def test_reduce_mod_p(q, p, expected):
    assert reduce_mod_p(q, p) == expected


def test_reduce_mod_p_rejects_denominator():
    with pytest.raises(DenominatorNotInvertible):
        reduce_mod_p(Fraction(1, 6), 3)


def test_field_arithmetic_examples():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert FieldSpec(7).inv(3) == 5
    assert FieldSpec(7).neg(0) == 0
    assert QQ.neg(QQ.zero) == 0


@pytest.mark.parametrize("characteristic", [-1, 1, 4, 9, 91])
def test_not_prime(characteristic):
    with pytest.raises(NotPrime):
        FieldSpec(characteristic)


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("field", [QQ, FieldSpec(5)])
def test_inverse_of_zero(field):
    with pytest.raises(DivisionByZero):
        field.inv(field.zero)
    with pytest.raises(ZeroDivisionError):
        field.div(field.one, field.zero)


def test_canonical_form():
    assert QQ.convert("-6/4") == Fraction(-3, 2)
    assert QQ.format(Fraction(-3, 2)) == "-3/2"
    assert QQ.format(Fraction(4, 2)) == "2"
    assert FieldSpec(5).convert(-1) == 4
    assert FieldSpec(5).convert("3/2") == 4
    assert FieldSpec(5).format(4) == "4"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        QQ.parse("one half")


def test_no_map_from_prime_field():
    with pytest.raises(FieldMismatch):
        QQ.image_of(1, FieldSpec(3))


@given(a=rationals, b=rationals, p=st.sampled_from(PRIMES))
def test_reduction_is_a_ring_homomorphism(a, b, p):
    assume(a.denominator % p and b.denominator % p)
    field = FieldSpec(p)
    assert reduce_mod_p(a + b, p) == field.add(reduce_mod_p(a, p), reduce_mod_p(b, p))
    assert reduce_mod_p(a * b, p) == field.mul(reduce_mod_p(a, p), reduce_mod_p(b, p))


@given(a=st.integers(1, 10**6), p=st.sampled_from(PRIMES))
def test_prime_field_inverse(a, p):
    field = FieldSpec(p)
    a = field.convert(a)
    if a:
        assert field.mul(a, field.inv(a)) == 1
        assert field.power(a, p - 1) == 1


@given(a=rationals)
def test_rational_format_parses_back(a):
    assert QQ.parse(QQ.format(a)) == a
