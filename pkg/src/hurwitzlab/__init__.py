"""Exact Hurwitz continued fractions over Z[i], cylinder-set geometry,
and seeded Monte Carlo verification of the associated metric laws."""

from .gaussian import (GaussInt, GaussRational, abs_sq, sup_norm,
                       round_nearest, gauss_gcd, rat_canonical, rat_inverse,
                       rat_sub_gauss)
from .dyadic import Dyadic, ComplexBall, ball_from_fractions, sqrt_ball
from .hcf import (DigitString, ConvergentSeq, Trajectory, gauss_map_step,
                  hcf_expand_exact, hcf_expand_ball, convergents, eval_finite,
                  approx_quality, lower_bound_holds, APPROX_BOUND)

__version__ = "0.1.0"
