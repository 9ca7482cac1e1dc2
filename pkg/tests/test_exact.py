import math
import random
from fractions import Fraction

import pytest

from spinstat.errors import IncompatibleRadicandsError
from spinstat.exact import ExactScalar, format_scalar, parse_scalar, squarefree_decompose


@pytest.mark.parametrize(
    "n, square, rest",
    [(0, 1, 0), (1, 1, 1), (2, 1, 2), (4, 2, 1), (12, 2, 3), (360, 6, 10), (49, 7, 1)],
)
def test_squarefree_decompose(n, square, rest):
    assert squarefree_decompose(n) == (square, rest)
    assert square * square * rest == n


def test_constructor_normalizes():
    s = ExactScalar(Fraction(1, 2), 8)
    assert (s.coefficient, s.radicand) == (Fraction(1), 2)
    assert ExactScalar(Fraction(3), 1).radicand == 1
    zero = ExactScalar(0, 7)
    assert (zero.coefficient, zero.radicand) == (0, 1)
    assert (ExactScalar(5, 0).coefficient, ExactScalar(5, 0).radicand) == (0, 1)


def test_sqrt_of_rationals():
    assert ExactScalar.sqrt(Fraction(1, 2)) == ExactScalar(Fraction(1, 2), 2)
    assert ExactScalar.sqrt(4) == ExactScalar(2)
    assert ExactScalar.sqrt(Fraction(2, 3)) == ExactScalar(Fraction(1, 3), 6)
    assert float(ExactScalar.sqrt(Fraction(7, 11))) == pytest.approx(math.sqrt(7 / 11))
    with pytest.raises(ValueError):
        ExactScalar.sqrt(-1)


def test_addition_requires_matching_radicand():
    a = ExactScalar(Fraction(1, 2), 2)
    b = ExactScalar(Fraction(1, 3), 2)
    assert a + b == ExactScalar(Fraction(5, 6), 2)
    assert a - a == ExactScalar(0)
    assert a + ExactScalar(0) == a
    with pytest.raises(IncompatibleRadicandsError):
        a + ExactScalar(1, 3)


def test_multiplication_merges_radicands():
    a = ExactScalar(Fraction(1, 2), 6)
    b = ExactScalar(Fraction(2, 3), 10)
    prod = a * b
    # sqrt(6)*sqrt(10) = 2*sqrt(15)
    assert prod == ExactScalar(Fraction(2, 3), 15)
    assert (a * a).radicand == 1
    assert a * 2 == ExactScalar(1, 6)


def test_division_and_inverse():
    a = ExactScalar(Fraction(3, 4), 2)
    assert a / a == ExactScalar(1)
    inv = ExactScalar.sqrt(2).inverse()
    assert inv == ExactScalar(Fraction(1, 2), 2)
    assert float(a / ExactScalar(2, 3)) == pytest.approx(float(a) / float(ExactScalar(2, 3)))
    with pytest.raises(ZeroDivisionError):
        ExactScalar(0).inverse()


def test_product_squares_match_rational_arithmetic():
    # (a*b)^2 as a fraction must equal a^2 * b^2 computed purely rationally.
    rng = random.Random(7)
    for _ in range(1000):
        a = ExactScalar(
            Fraction(rng.randint(-50, 50), rng.randint(1, 30)), rng.randint(0, 40)
        )
        b = ExactScalar(
            Fraction(rng.randint(-50, 50), rng.randint(1, 30)), rng.randint(0, 40)
        )
        assert (a * b).squared() == a.squared() * b.squared()


def test_float_conversion_accuracy():
    rng = random.Random(11)
    for _ in range(200):
        a = ExactScalar(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), rng.randint(1, 30))
        expected = float(a.coefficient) * math.sqrt(a.radicand)
        assert float(a) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "text",
    ["0", "1", "-1", "2/3", "-5/7", "sqrt(2)", "-sqrt(3)", "1/2*sqrt(2)", "-3/4*sqrt(30)"],
)
def test_format_parse_round_trip(text):
    value = parse_scalar(text)
    assert format_scalar(value) == text
    assert parse_scalar(format_scalar(value)) == value


def test_parse_rejects_garbage():
    for bad in ["", "sqrt()", "two", "1/2*sqrt(-3)", "1//2"]:
        with pytest.raises(ValueError):
            parse_scalar(bad)
