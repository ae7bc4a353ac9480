import random
from fractions import Fraction

import pytest

from godeaux_lines.fields import (
    DEFAULT_PRIMES,
    FieldDivisionError,
    FieldError,
    MixedFieldError,
    PrimeField,
    QQ,
    field_from_spec,
    is_prime,
)


def test_f7_product():
    F = PrimeField(7)
    assert F.mul(3, 5) == 1


def test_rational_sum():
    assert QQ.add(Fraction(2, 3), Fraction(1, 6)) == Fraction(5, 6)


def test_f31_inverse():
    F = PrimeField(31)
    assert F.inv(2) == 16
    assert F.mul(2, 16) == 1


def test_default_primes_are_prime():
    for p in DEFAULT_PRIMES:
        PrimeField(p)  # construction runs the primality test


@pytest.mark.parametrize("n", [1, 4, 9, 32231, 32233 * 3, 2**20])
def test_composites_rejected(n):
    assert not is_prime(n)
    with pytest.raises(FieldError):
        PrimeField(n)


def test_modulus_range():
    with pytest.raises(FieldError):
        PrimeField(2**63 + 9)  # too large even if prime


@pytest.mark.parametrize("p", [31, 101, 10007, 32233])
def test_division_round_trip_prime(p):
    F = PrimeField(p)
    rng = random.Random(p)
    for _ in range(1000):
        x, y = F.random(rng), F.random_nonzero(rng)
        assert F.mul(F.mul(x, y), F.inv(y)) == x


def test_division_round_trip_rational():
    rng = random.Random(5)
    for _ in range(1000):
        x, y = QQ.random(rng), QQ.random(rng)
        if QQ.is_zero(y):
            continue
        assert QQ.mul(QQ.mul(x, y), QQ.inv(y)) == x


def test_canonical_idempotent():
    F = PrimeField(101)
    for x in (-5, 0, 100, 12345):
        once = F.canonical(x)
        assert F.canonical(once) == once
    q = QQ.canonical(Fraction(4, -6))
    assert q == Fraction(-2, 3) and q.denominator > 0
    assert QQ.canonical(q) == q


def test_field_axioms_random():
    F = PrimeField(10007)
    rng = random.Random(1)
    for _ in range(300):
        a, b, c = (F.random(rng) for _ in range(3))
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_division_by_zero():
    F = PrimeField(31)
    with pytest.raises(FieldDivisionError):
        F.inv(0)
    with pytest.raises(FieldDivisionError):
        F.div(3, 0)
    with pytest.raises(FieldDivisionError):
        QQ.inv(Fraction(0))


def test_mixed_field_error():
    a = PrimeField(31).element(3)
    b = PrimeField(101).element(3)
    with pytest.raises(MixedFieldError):
        a + b
    with pytest.raises(MixedFieldError):
        a * QQ.element(1)


def test_boxed_arithmetic():
    F = PrimeField(31)
    x = F.element(17)
    assert (x + 20).value == 6
    assert (x * x).value == 17 * 17 % 31
    assert (-x).value == 14
    assert (x / x).value == 1
    assert x == 17 + 31


def test_scalar_text_round_trip():
    F = PrimeField(10007)
    assert F.parse_scalar(F.format_scalar(1234)) == 1234
    assert QQ.format_scalar(Fraction(-3, 4)) == "-3/4"
    assert QQ.parse_scalar("-3/4") == Fraction(-3, 4)
    assert QQ.format_scalar(Fraction(7)) == "7"


def test_field_from_spec():
    assert field_from_spec("p31") == PrimeField(31)
    assert field_from_spec("q") == QQ
    assert field_from_spec({"kind": "prime", "p": 101}) == PrimeField(101)
    assert field_from_spec({"kind": "rational"}) == QQ
    with pytest.raises(FieldError):
        field_from_spec("nonsense")
