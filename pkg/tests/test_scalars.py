import random
from fractions import Fraction

import pytest

from twochar.scalars import (
    Cyclotomic,
    FieldOp,
    ZeroInversionError,
    approximate_complex,
    discrete_log,
    field_arithmetic,
    root_of_unity,
)


@pytest.mark.parametrize('order', [1, 2, 3, 4, 6, 8, 12])
def test_root_of_unity_power_is_one(order):
    zeta = root_of_unity(order, 1)
    assert zeta**order == 1
    assert root_of_unity(order, order) == 1


def test_root_of_unity_reduces_exponent():
    assert root_of_unity(3, 4) == root_of_unity(3, 1)
    assert root_of_unity(3, -1) == root_of_unity(3, 2)


def test_root_of_unity_invalid_order():
    with pytest.raises(ValueError, match='positive order'):
        root_of_unity(0, 1)


def test_cyclotomic_relation():
    # 1 + ω + ω² = 0
    omega = root_of_unity(3, 1)
    assert 1 + omega + omega**2 == 0
    assert (1 + omega + omega**2).is_zero()


def test_equality_across_fields():
    assert root_of_unity(4, 2) == -1
    assert root_of_unity(6, 2) == root_of_unity(3, 1)
    assert root_of_unity(2, 1) == Cyclotomic.from_rational(-1)
    assert hash(root_of_unity(6, 3)) == hash(Cyclotomic.from_rational(-1))


def test_rational_values():
    half = Cyclotomic.from_rational(Fraction(1, 2), order=5)
    assert half.is_rational()
    assert not half.is_integer()
    assert half.rational() == Fraction(1, 2)
    assert (half + half).is_integer()
    with pytest.raises(ValueError, match='not rational'):
        root_of_unity(3, 1).rational()


def test_inverse_and_division():
    x = 1 + root_of_unity(8, 1)
    assert x * x.inverse() == 1
    assert (x / x) == 1
    assert 2 / Cyclotomic.from_rational(4) == Fraction(1, 2)


def test_zero_inversion_raises():
    with pytest.raises(ZeroInversionError):
        Cyclotomic.zero(3).inverse()
    with pytest.raises(ZeroDivisionError):
        root_of_unity(3, 1) / 0


def test_conjugate():
    omega = root_of_unity(3, 1)
    assert omega.conjugate() == omega**2
    assert (omega * omega.conjugate()) == 1
    i = root_of_unity(4, 1)
    assert (i + 1).conjugate() == 1 - i


@pytest.mark.parametrize(
    'op, expected',
    [
        ('add', root_of_unity(4, 1) + 2),
        ('mul', 2 * root_of_unity(4, 1)),
        (FieldOp.neg, -root_of_unity(4, 1)),
        ('inv', root_of_unity(4, 3)),
    ],
)
def test_field_arithmetic(op, expected):
    assert field_arithmetic(root_of_unity(4, 1), Cyclotomic.from_rational(2), op) == expected


def test_field_arithmetic_unknown_op():
    with pytest.raises(ValueError):
        field_arithmetic(Cyclotomic.one(), Cyclotomic.one(), 'pow')


def test_embed():
    omega = root_of_unity(3, 1)
    assert omega.embed(6) == omega
    assert omega.embed(6).order == 6
    with pytest.raises(ValueError, match='cannot embed'):
        omega.embed(4)


def test_json_forms():
    omega = root_of_unity(3, 1)
    assert Cyclotomic.from_json(omega.to_json()) == omega
    assert Cyclotomic.from_json({'root': [3, 1]}) == omega
    assert Cyclotomic.from_json('2/3') == Fraction(2, 3)
    assert Cyclotomic.from_json(-1) == -1
    with pytest.raises(ValueError):
        Cyclotomic.from_json(True)


def test_discrete_log():
    assert discrete_log(root_of_unity(6, 5), 6) == 5
    assert discrete_log(Cyclotomic.from_rational(-1), 4) == 2
    assert discrete_log(Cyclotomic.from_rational(2), 4) is None


def test_approximate_complex():
    re, im = approximate_complex(root_of_unity(4, 1))
    assert re == pytest.approx(0.0, abs=1e-12)
    assert im == pytest.approx(1.0)


def test_str():
    assert str(Cyclotomic.from_rational(Fraction(-3, 2))) == '-3/2'
    assert 'ζ' in str(root_of_unity(3, 1))


MIXED_ORDERS = [1, 2, 3, 4, 5, 6, 8, 12]


def _random_cyclotomic(rng, order):
    return sum(
        (Fraction(rng.randint(-4, 4), rng.randint(1, 3)) * root_of_unity(order, k) for k in range(order)),
        Cyclotomic.zero(order),
    )


@pytest.mark.parametrize('seed', range(6))
def test_field_axioms_random_mixed_orders(seed):
    rng = random.Random(seed)
    a, b, c = (_random_cyclotomic(rng, rng.choice(MIXED_ORDERS)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    assert a * Cyclotomic.one() == a
    if a:
        assert a * a.inverse() == 1
        assert a.inverse().inverse() == a


@pytest.mark.parametrize('seed', range(6))
def test_complex_embedding_is_a_homomorphism(seed):
    rng = random.Random(100 + seed)
    a, b = (_random_cyclotomic(rng, rng.choice(MIXED_ORDERS)) for _ in range(2))

    def as_complex(x):
        return complex(*approximate_complex(x))

    assert as_complex(a + b) == pytest.approx(as_complex(a) + as_complex(b), abs=1e-9)
    assert as_complex(a * b) == pytest.approx(as_complex(a) * as_complex(b), abs=1e-9)
    assert as_complex(a.conjugate()) == pytest.approx(as_complex(a).conjugate(), abs=1e-9)


@pytest.mark.parametrize('order', [3, 5, 7, 8, 9, 12, 15])
def test_inverse_is_exact_in_every_field(order):
    x = 2 + root_of_unity(order, 1) - 3 * root_of_unity(order, 2)
    y = x.inverse()
    assert y.order == order
    assert x * y == 1
    assert y * x == 1


def test_hash_follows_the_smallest_containing_field():
    omega = root_of_unity(3, 1)
    assert hash(omega) == hash(root_of_unity(6, 2))
    assert hash(omega.embed(12)) == hash(omega)
    assert hash((1 + root_of_unity(4, 1)).embed(8)) == hash(1 + root_of_unity(4, 1))
    assert hash(root_of_unity(12, 6)) == hash(-1) == hash(Cyclotomic.from_rational(-1, 7))
    assert len({omega, root_of_unity(6, 2), omega.embed(24), omega**2}) == 2


def test_hash_agrees_with_equality_for_values_near_each_other():
    # close in the complex plane yet different exact values
    a = Cyclotomic.from_rational(Fraction(1, 10**12))
    b = Cyclotomic.from_rational(Fraction(2, 10**12))
    assert a != b
    assert hash(a) != hash(b)
