from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from supermax.scalar import I, R2, DivisionByZero, Scalar, fmt, sqrt_rational, to_field

rat = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(lambda f: mpq(f.numerator, f.denominator))
scalars = st.builds(Scalar, rat, rat, rat, rat)


def to_sympy(x):
    a, b, c, d = x.parts if isinstance(x, Scalar) else (x, 0, 0, 0)
    r = lambda q: sympy.Rational(int(mpq(q).numerator), int(mpq(q).denominator))
    return r(a) + r(b) * sympy.I + r(c) * sympy.sqrt(2) + r(d) * sympy.I * sympy.sqrt(2)


@given(scalars, scalars)
def test_ring_ops_match_sympy(x, y):
    assert sympy.simplify(to_sympy(x + y) - (to_sympy(x) + to_sympy(y))) == 0
    assert sympy.expand(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0


@given(scalars)
def test_inverse(x):
    if not x:
        with pytest.raises(DivisionByZero):
            x.inverse()
        return
    assert x * x.inverse() == 1


@given(scalars, scalars, scalars)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


def test_units():
    assert I * I == -1
    assert R2 * R2 == 2
    assert (I * R2) ** 2 == -2


@given(rat)
def test_sqrt_rational_squares_back(q):
    s = sqrt_rational(q * q)
    assert s is not None and s * s == q * q
    t = sqrt_rational(-2 * q * q)
    assert t is not None and t * t == -2 * q * q


def test_sqrt_rational_none_outside_field():
    assert sqrt_rational(3) is None


@given(scalars)
def test_fmt_roundtrip(x):
    assert to_field(fmt(x)) == x


def test_parse_fraction():
    assert to_field("1/2") == Fraction(1, 2)
