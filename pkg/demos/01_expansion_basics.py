"""Walk through the basic machinery: expansions, convergents, quality.

Run:  python demos/01_expansion_basics.py
"""

from fractions import Fraction

from hurwitzlab import (GaussInt, GaussRational, approx_quality,
                        eval_finite, hcf_expand_ball, hcf_expand_exact,
                        sqrt_ball)

# ---------------------------------------------------------------------------
# Exact expansion of a Gaussian rational.  The digits are Gaussian integers
# chosen by nearest-integer rounding; remainders always stay in the half-open
# unit square F = [-1/2, 1/2)^2.

z = GaussRational.from_fractions(Fraction(2, 5))
traj = hcf_expand_exact(z)
print(f"expansion of 2/5:      {traj.digit_string}")
print(f"remainders in F:       {[str(t) for t in traj.tails]}")
print(f"eval round-trip:       {eval_finite(traj.digit_string) == z}")

# Note the Hurwitz branch: [0; 3, -2], not the regular-looking [0; 2, 2],
# whose tail 1/2 would escape F.

w = GaussRational.from_fractions(Fraction(5, 13), Fraction(-3, 13))
tw = hcf_expand_exact(w)
print(f"\nexpansion of 5/13-3/13i: {tw.digit_string}")
conv = tw.convergents()
for n in range(len(conv)):
    print(f"  p_{n}/q_{n} = {conv.value(n)}")
print(f"determinant identity:  {conv.determinant_ok()}")
print(f"|q_n| strictly grows:  {conv.growth_ok()}")

# ---------------------------------------------------------------------------
# The scaled approximation error e_n = |z - p_n/q_n| |a_(n+1)| |q_n|^2 never
# exceeds 4 + 2 sqrt(2) ~ 6.8284; the check is exact integer arithmetic.

print("\nscaled errors for 5/13 - 3/13 i:")
for n in range(len(tw.digit_string) - 1):
    e, certified = approx_quality(tw, n)
    print(f"  n={n}: e_n <= {e:.6f}   certified: {certified}")

# ---------------------------------------------------------------------------
# Non-rational inputs go through certified balls: a digit is emitted only
# when the whole ball sits strictly inside one rounding cell, so every
# printed digit is provably the true one.  sqrt(2) - 1 has the periodic
# expansion [0; 2, 2, 2, ...].

ball = sqrt_ball(2, 96).sub_gauss(GaussInt(1))
print(f"\nball expansion of sqrt(2)-1: {hcf_expand_ball(ball, 12)}")

ball_i = sqrt_ball(2, 96).sub_gauss(GaussInt(1)).rotate_i()
print(f"ball expansion of i(sqrt(2)-1): {hcf_expand_ball(ball_i, 6)}")
