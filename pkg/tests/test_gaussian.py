import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitzlab.errors import DivisionByZero
from hurwitzlab.gaussian import (GaussInt, GaussRational, abs_sq, gauss_gcd,
                                 rat_canonical, rat_inverse, rat_sub_gauss,
                                 round_nearest, sup_norm, unit_normalize)

gauss_ints = st.builds(GaussInt, st.integers(-10**6, 10**6),
                       st.integers(-10**6, 10**6))


def rat(re, im=0):
    return GaussRational.from_fractions(Fraction(re), Fraction(im))


def test_round_nearest_tie_goes_up():
    assert round_nearest(rat(Fraction(1, 2), Fraction(1, 2))) == GaussInt(1, 1)


def test_round_nearest_zero():
    assert round_nearest(rat(0)) == GaussInt(0)


def test_round_nearest_mixed_signs():
    assert round_nearest(rat(Fraction(6, 5), Fraction(-7, 10))) == GaussInt(1, -1)


@pytest.mark.parametrize("re,im,expected", [
    (Fraction(-1, 2), Fraction(-1, 2), True),
    (Fraction(-1, 2), Fraction(0), True),
    (Fraction(0), Fraction(-1, 2), True),
    (Fraction(1, 2), Fraction(0), False),
    (Fraction(0), Fraction(1, 2), False),
    (Fraction(1, 2), Fraction(1, 2), False),
    (Fraction(499, 1000), Fraction(-1, 2), True),
])
def test_round_nearest_zero_iff_in_fundamental_domain(re, im, expected):
    # F is exactly the rounding cell of 0, half-open on the + sides
    assert (round_nearest(rat(re, im)) == GaussInt(0)) is expected


def test_norms():
    g = GaussInt(3, -4)
    assert sup_norm(g) == 4
    assert abs_sq(g) == 25
    assert sup_norm(GaussInt(0)) == 0 and abs_sq(GaussInt(0)) == 0


def test_shell_of_sup_norm_two_has_sixteen_members():
    shell = [GaussInt(a, b) for a in range(-2, 3) for b in range(-2, 3)
             if max(abs(a), abs(b)) == 2]
    assert len(shell) == 16


@given(gauss_ints)
def test_norm_sandwich(g):
    s = sup_norm(g)
    assert s * s <= abs_sq(g) <= 2 * s * s


def test_gcd_examples():
    assert gauss_gcd(GaussInt(2), GaussInt(1, 1)) == GaussInt(1, 1)
    assert gauss_gcd(GaussInt(3), GaussInt(1)) == GaussInt(1)
    assert gauss_gcd(GaussInt(-7, 0), GaussInt(0)) == GaussInt(7, 0)
    assert gauss_gcd(GaussInt(0), GaussInt(0)) == GaussInt(0)


def _divides(d, a):
    # d | a in Z[i], via exact conjugate division
    n = abs_sq(d)
    t = a * d.conj()
    return t.re % n == 0 and t.im % n == 0


@given(gauss_ints, gauss_ints)
@settings(max_examples=300)
def test_gcd_divides_both(a, b):
    g = gauss_gcd(a, b)
    if not g:
        assert not a and not b
        return
    assert _divides(g, a) and _divides(g, b)
    assert g == unit_normalize(g)


def test_gcd_is_greatest_brute_force_small():
    # every common divisor divides the gcd; exhaustive over small norms
    pts = [GaussInt(x, y) for x in range(-3, 4) for y in range(-3, 4)]
    for a in [GaussInt(4, 2), GaussInt(5, 0), GaussInt(3, 3)]:
        for b in [GaussInt(2, 2), GaussInt(1, 3), GaussInt(0, 4)]:
            g = gauss_gcd(a, b)
            for d in pts:
                if d and _divides(d, a) and _divides(d, b):
                    assert _divides(d, g)


def test_rat_canonical_examples():
    assert rat_canonical(GaussInt(1, 1), GaussInt(1, -1)) == rat(0, 1)
    assert rat_inverse(rat(1) + rat(0, 1)) == rat(Fraction(1, 2), Fraction(-1, 2))
    assert rat_sub_gauss(rat(Fraction(1, 2)), GaussInt(1)) == rat(Fraction(-1, 2))


def test_rat_canonical_is_idempotent_and_representation_free():
    a = rat_canonical(GaussInt(2, 4), GaussInt(2))
    b = rat_canonical(GaussInt(1, 2), GaussInt(1))
    assert a == b and hash(a) == hash(b)
    again = rat_canonical(a.num, GaussInt(a.den))
    assert again == a


def test_rat_reduced_invariant():
    q = rat_canonical(GaussInt(6, 9), GaussInt(0, 3))
    assert q.den >= 1
    assert math.gcd(math.gcd(abs(q.num.re), abs(q.num.im)), q.den) == 1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        rat_canonical(GaussInt(1), GaussInt(0))
    with pytest.raises(DivisionByZero):
        rat_inverse(rat(0))


@given(st.integers(-999, 999), st.integers(-999, 999),
       st.integers(-99, 99), st.integers(-99, 99))
def test_field_ops_match_complex_floats(ar, ai, br, bi):
    if br == 0 and bi == 0:
        return
    a = rat(ar, ai)
    b = rat(br, bi)
    got = (a / b).to_complex()
    want = complex(ar, ai) / complex(br, bi)
    assert abs(got - want) < 1e-6 * (1 + abs(want))


def test_json_round_trip():
    g = GaussInt(2**100, -3**50)
    assert GaussInt.from_json(g.to_json()) == g
    q = rat_canonical(GaussInt(2**80 + 1, 7), GaussInt(3, 5))
    assert GaussRational.from_json(q.to_json()) == q
