from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fermext.qz import QZ, add, neg, order, qz, scale

qzs = st.builds(QZ, st.integers(-1000, 1000), st.integers(1, 720))


def test_examples():
    assert add(QZ(1, 2), QZ(1, 2)) == QZ(0)
    assert add(QZ(1, 4), QZ(1, 4)) == QZ(1, 2)
    assert scale(2, QZ(1, 8)) == QZ(1, 4)
    assert neg(QZ(1, 4)) == QZ(3, 4)
    assert scale(4, QZ(1, 8)) == QZ(1, 2)
    assert order(QZ(1, 2)) == 2


def test_zero_is_unique():
    z = QZ(5, 5)
    assert (z.num, z.den) == (0, 1)
    assert QZ(0, 7) == QZ(0) and hash(QZ(0, 7)) == hash(QZ(0))
    assert not QZ(3, 3)


def test_parse_and_str():
    assert QZ.parse("3/8") == QZ(3, 8)
    assert QZ.parse("-1/4") == QZ(3, 4)
    assert QZ.parse("0") == QZ(0)
    assert str(QZ(7, 4)) == "3/4"
    assert qz(Fraction(5, 2)) == QZ(1, 2)


def test_bad_denominator():
    with pytest.raises(ValueError):
        QZ(1, 0)


def test_scaled_to():
    assert QZ(3, 8).scaled_to(16) == 6
    with pytest.raises(Exception):
        QZ(1, 3).scaled_to(8)


@given(qzs)
def test_normal_form(a):
    from math import gcd

    assert 0 <= a.num < a.den
    assert gcd(a.num, a.den) == 1


@given(qzs, qzs, qzs)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + neg(a) == QZ(0)
    assert a - b == a + (-b)


@given(qzs)
def test_order_law(a):
    n = order(a)
    assert a.den % n == 0
    assert scale(n, a) == QZ(0)
    assert all(scale(k, a) != QZ(0) for k in range(1, n))


@given(qzs, st.integers(-50, 50), st.integers(-50, 50))
def test_scale_is_linear(a, m, n):
    assert scale(m + n, a) == scale(m, a) + scale(n, a)
    assert a * m == scale(m, a)
