from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitzlab.quadratics import Surd, rational_between, sqrt_fraction

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=40)
rads = st.sampled_from([0, 1, 2, 3, 5, 6, 7, 10])


def test_normalization_squarefree():
    assert Surd(0, 1, 8) == Surd(0, 2, 2)
    assert Surd(0, 1, 4) == Surd(2)
    assert Surd(0, 0, 7) == Surd(0)


def test_sign_basics():
    assert Surd(0, 1, 2).sign() == 1
    assert Surd(-1, 1, 2).sign() == 1          # sqrt(2) > 1
    assert Surd(Fraction(3, 2), -1, 2).sign() == 1   # 1.5 > sqrt(2)
    assert Surd(1, -1, 2).sign() == -1
    assert Surd(2, -1, 4).sign() == 0          # 2 - sqrt(4) = 0


def test_cross_radical_compare():
    a = Surd(2, 1, 2)      # ~3.414
    b = Surd(1, 1, 3)      # ~2.732
    assert Surd.compare(a, b) == 1
    assert Surd.compare(b, a) == -1
    # sqrt(2) + sqrt(8)/2 duplicates normalize to equality
    assert Surd.compare(Surd(0, 1, 2), Surd(0, Fraction(1, 2), 8)) == 0


@given(fracs, fracs, rads, fracs, fracs, rads)
def test_compare_agrees_with_floats_when_clear(p1, c1, d1, p2, c2, d2):
    a, b = Surd(p1, c1, d1), Surd(p2, c2, d2)
    fa, fb = float(a), float(b)
    if abs(fa - fb) > 1e-6:
        assert Surd.compare(a, b) == (1 if fa > fb else -1)


@given(fracs, fracs, rads)
def test_inverse_and_pow(p, c, d):
    v = Surd(p, c, d)
    if v.sign() == 0:
        return
    assert v * v.inverse() == Surd(1)
    assert v ** 3 == v * v * v


def test_arithmetic_same_radicand():
    a = Surd(1, 2, 3)
    b = Surd(-2, 1, 3)
    assert a + b == Surd(-1, 3, 3)
    assert a * b == Surd(1 * -2 + 2 * 1 * 3, 1 * 1 + 2 * -2, 3)


def test_mixing_radicands_raises():
    with pytest.raises(ValueError):
        Surd(0, 1, 2) + Surd(0, 1, 3)


def test_sqrt_fraction():
    s = sqrt_fraction(Fraction(3, 4))
    assert s == Surd(0, Fraction(1, 2), 3)
    assert sqrt_fraction(Fraction(9, 16)) == Surd(Fraction(3, 4))


def test_rational_between():
    a, b = Surd(0, 1, 2), Surd(0, 1, 3)      # 1.414 .. 1.732
    m = rational_between(a, b)
    assert Surd.compare(a, Surd(m)) < 0 < Surd.compare(b, Surd(m))
    # a tight gap still succeeds
    t1 = Surd(Fraction(141421356, 10**8))
    t2 = Surd(0, 1, 2)
    m2 = rational_between(t1, t2)
    assert Surd.compare(t1, Surd(m2)) < 0 < Surd.compare(t2, Surd(m2))
