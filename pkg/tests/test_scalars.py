from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fellb.exactalg import Gauss, I, ONE, ZERO, coerce, format_scalar, parse_scalar

fracs = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gauss = st.builds(Gauss, fracs, fracs)


def as_pair(z):
    return Fraction(int(z.re.numerator), int(z.re.denominator)), Fraction(int(z.im.numerator), int(z.im.denominator))


@given(gauss, gauss)
def test_arithmetic_matches_pairs_of_fractions(x, y):
    a, b = as_pair(x)
    c, d = as_pair(y)
    assert as_pair(x + y) == (a + c, b + d)
    assert as_pair(x - y) == (a - c, b - d)
    assert as_pair(x * y) == (a * c - b * d, a * d + b * c)
    if y:
        q = x / y
        assert q * y == x


@given(gauss)
def test_conjugate_and_norm(x):
    assert x * x.conjugate() == x.norm2()
    assert x.conjugate().conjugate() == x


@given(gauss)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("text,value", [
    ("i", I), ("-i", -I), ("2*i", 2 * I), ("1+i", ONE + I), ("1/2-3/4*i", Gauss(Fraction(1, 2), Fraction(-3, 4))),
    ("0", ZERO), ("+5", Gauss(5)), ("+1/2-2*i", Gauss(Fraction(1, 2), -2)), ("-7/3", Gauss(Fraction(-7, 3))),
])
def test_parse_examples(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1+", "i*i", "abc", "1//2"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_integers_compare_and_hash_like_scalars():
    assert coerce(3) == 3
    assert hash(coerce(3)) == hash(Gauss(3))
    assert I * I == -1
