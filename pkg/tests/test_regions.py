from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hurwitzlab.regions as R
from hurwitzlab.gaussian import GaussInt, GaussRational, abs_sq
from hurwitzlab.hcf import hcf_expand_exact


def gi(re, im=0):
    return GaussInt(re, im)


UNITS_AND_ZERO = [gi(0), gi(1), gi(-1), gi(0, 1), gi(0, -1)]


def test_base_region_is_half_open():
    F = R.base_region_F()
    assert R.membership(F, 0, 0)
    assert R.membership(F, Fraction(-1, 2), 0)
    assert R.membership(F, Fraction(-1, 2), Fraction(-1, 2))
    assert not R.membership(F, Fraction(1, 2), 0)
    assert not R.membership(F, 0, Fraction(1, 2))
    assert R.region_classify(F) == R.FULL_SQUARE


def test_inv_region_of_F_matches_eq1():
    inv = R.inv_region(R.base_region_F())
    assert set(inv.cons) == {
        ("D", -1, 0, "out", True),   # closed exterior at -1
        ("D", 0, 1, "out", True),    # closed exterior at i
        ("D", 1, 0, "out", False),   # open exterior at 1
        ("D", 0, -1, "out", False),  # open exterior at -i
    }


def test_inv_region_is_involution():
    F = R.base_region_F()
    back = R.translate_into_square(R.inv_region(R.inv_region(F)), gi(0))
    assert R.minimize_region(back) == F


def test_inv_region_matches_membership_sampling():
    # w in inv[F_1(1-i)] iff 1/w lands in F_1(1-i), on a rational grid
    r = R.cylinder_region([gi(1, -1)])
    inv = R.inv_region(r)
    from hurwitzlab.gaussian import rat_canonical, rat_inverse
    n = 0
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a == 0 and b == 0:
                continue
            w = rat_canonical(gi(a, b), gi(5))         # grid step 1/5
            direct = all(R._eval_constraint(c, R.Surd(w.re), R.Surd(w.im))
                         for c in inv.cons)
            z = rat_inverse(w)
            via_map = R.membership(r, z.re, z.im)
            assert direct == via_map, (a, b)
            n += 1
    assert n > 0


@pytest.mark.parametrize("a", UNITS_AND_ZERO)
def test_unit_cylinders_empty(a):
    assert R.cylinder_region([a]).is_empty
    assert R.region_classify(R.cylinder_region([a])) == R.EMPTY


def test_full_square_iff_norm_at_least_eight():
    for re in range(-4, 5):
        for im in range(-4, 5):
            a = gi(re, im)
            if abs_sq(a) < 2:
                continue
            cls = R.region_classify(R.cylinder_region([a]))
            if abs_sq(a) >= 8:
                assert cls == R.FULL_SQUARE, a
            else:
                assert cls == R.PROPER, a


def test_depth_one_shapes():
    r = R.cylinder_region([gi(3)])
    assert R.region_classify(r) == R.FULL_SQUARE
    r2 = R.cylinder_region([gi(1, -1)])
    assert set(r2.cons) == {("D", -1, 0, "out", False),
                            ("D", 0, 1, "out", False),
                            ("H", "re", "<", 1)}


def test_irregular_line_segment_family():
    # (-1+i, 1-in) lands on the shifted line Re = -1/2 for every n >= 2
    for n in range(2, 11):
        r = R.cylinder_region([gi(-1, 1), gi(1, -n)])
        assert R.region_classify(r) == R.DEGENERATE, n
        assert ("H", "re", "<=", -1) in r.cons


def test_is_regular_examples():
    assert R.is_regular([gi(1, -1)])
    assert not R.is_regular([gi(-1, 1), gi(1, -3)])
    assert R.is_regular([gi(3), gi(3)])


def test_rotate_is_fourfold_identity():
    r = R.cylinder_region([gi(2, 1)])
    assert R.region_rotate(r, 4) == r
    rot = R.region_rotate(r, 1)
    assert rot != r
    assert R.region_equal(R.region_rotate(rot, 3), r)


def test_region_interior_of_degenerate_is_empty():
    r = R.cylinder_region([gi(-1, 1), gi(1, -2)])
    assert R.region_interior(r).is_empty


small_fracs = st.fractions(min_value=-Fraction(1, 2),
                           max_value=Fraction(1, 2), max_denominator=499)


def _moebius_pullback(z, conv, n):
    """t_{a,n}^{-1}(z) = (p_n - z q_n)/(z q_(n-1) - p_(n-1))."""
    p1, q1 = conv.pair(n - 1)
    p, q = conv.pair(n)
    num = GaussRational.from_int(p) - z * q
    den = z * q1 - GaussRational.from_int(p1)
    return num / den


@given(small_fracs, small_fracs)
@settings(max_examples=60, deadline=None)
def test_cylinder_membership_matches_dynamics(re, im):
    # z lies in C_n(a) iff the Moebius pullback of z by a's convergents
    # lands in F_n(a); true for z's own prefix, false for a perturbed one
    z = GaussRational.from_fractions(re, im)
    t = hcf_expand_exact(z, max_depth=4)
    digits = t.digit_string.digits[:3]
    if len(digits) < 2 or t.digit_string.a0 != gi(0):
        return
    region = R.base_region_F()
    for k, b in enumerate(digits):
        region = R.cylinder_step(region, b)
        n = k + 1
        w = _moebius_pullback(z, t.convergents(), n)
        assert R.membership(region, w.re, w.im), (z, n)
        assert w == t.tails[n]
    # perturb the last digit to any other admissible value
    from hurwitzlab.hcf import DigitString, convergents
    for delta in (gi(2), gi(-2), gi(0, 2), gi(3, 3)):
        wrong = digits[:-1] + (digits[-1] + delta,)
        r_wrong = R.cylinder_region(list(wrong))
        if r_wrong.is_empty:
            continue
        conv_wrong = convergents(DigitString(gi(0), wrong, False))
        w = _moebius_pullback(z, conv_wrong, len(wrong))
        assert not R.membership(r_wrong, w.re, w.im), (z, wrong)
