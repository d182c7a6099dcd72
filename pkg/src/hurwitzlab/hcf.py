"""Hurwitz continued fractions: expansion, convergents, evaluation.

The expansion of z iterates the complex Gauss map z |-> 1/z - [1/z] on
the half-open unit square F = [-1/2, 1/2)^2, where [.] rounds each
coordinate to the nearest integer (ties up, as forced by floor(x + 1/2)).
Exact inputs are Gaussian rationals and every step is exact; non-rational
inputs go through certified balls, and a digit is emitted only when the
whole ball lies strictly inside one rounding cell.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .dyadic import ComplexBall
from .errors import (DigitUncertain, EvaluationSingularity, InadmissibleDigit,
                     NotInFundamentalDomain)
from .gaussian import (GaussInt, GaussRational, RAT_ZERO, abs_sq,
                       rat_canonical, rat_inverse, rat_sub_gauss,
                       round_nearest)
from .quadratics import Surd

__all__ = [
    "DigitString",
    "ConvergentSeq",
    "Trajectory",
    "gauss_map_step",
    "hcf_expand_exact",
    "hcf_expand_ball",
    "convergents",
    "eval_finite",
    "approx_quality",
    "APPROX_BOUND",
    "KAPPA1",
    "lower_bound_holds",
]

# Scaled-error ceiling 4 + 2*sqrt(2) and the matching lower constant
# (2 - sqrt(2))/4; the first is the reciprocal of the second.
APPROX_BOUND = Surd(4, 2, 2)
KAPPA1 = Surd(Fraction(1, 2), Fraction(-1, 4), 2)


class DigitString:
    """a0; a1, a2, ... with a termination flag.

    terminated means the expansion reached remainder 0, so the finite
    string reproduces the input value exactly under eval_finite.
    """

    __slots__ = ("a0", "digits", "terminated")

    def __init__(self, a0: GaussInt, digits, terminated: bool):
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "digits", tuple(digits))
        object.__setattr__(self, "terminated", bool(terminated))

    def __setattr__(self, name, value):
        raise AttributeError("DigitString is immutable")

    def __len__(self):
        return len(self.digits)

    def __eq__(self, other):
        if not isinstance(other, DigitString):
            return NotImplemented
        return (self.a0 == other.a0 and self.digits == other.digits
                and self.terminated == other.terminated)

    def __hash__(self):
        return hash((self.a0, self.digits, self.terminated))

    def __repr__(self):
        body = ", ".join(str(d) for d in self.digits)
        tail = "" if self.terminated else ", ..."
        return f"[{self.a0}; {body}{tail}]"

    def to_json(self):
        return {"a0": self.a0.to_json(),
                "digits": [d.to_json() for d in self.digits],
                "terminated": self.terminated}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussInt.from_json(obj["a0"]),
                   [GaussInt.from_json(d) for d in obj["digits"]],
                   obj["terminated"])


class ConvergentSeq:
    """Pairs (p_n, q_n), n = 0..N, from the three-term recurrence.

    Seeds are p_-1 = 1, p_-2 = 0, q_-1 = 0, q_-2 = 1, so that
    p_n = a_n p_(n-1) + p_(n-2) and likewise for q.
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", tuple(pairs))

    def __setattr__(self, name, value):
        raise AttributeError("ConvergentSeq is immutable")

    def __len__(self):
        return len(self.pairs)

    def pair(self, n):
        """(p_n, q_n), accepting n = -1 and n = -2 seed indices."""
        if n == -1:
            return GaussInt(1), GaussInt(0)
        if n == -2:
            return GaussInt(0), GaussInt(1)
        return self.pairs[n]

    def value(self, n) -> GaussRational:
        p, q = self.pair(n)
        return rat_canonical(p, q)

    def determinant_ok(self) -> bool:
        """q_n p_(n-1) - q_(n-1) p_n = (-1)^n at every index."""
        sign = 1
        for n in range(len(self.pairs)):
            pp, qp = self.pair(n - 1)
            p, q = self.pair(n)
            if q * pp - qp * p != GaussInt(sign):
                return False
            sign = -sign
        return True

    def growth_ok(self) -> bool:
        """|q_n|^2 strictly increasing for n >= 0."""
        norms = [abs_sq(q) for _, q in self.pairs]
        return all(a < b for a, b in zip(norms, norms[1:]))

    def to_json(self):
        return [{"p": p.to_json(), "q": q.to_json()} for p, q in self.pairs]


class Trajectory:
    """An exact expansion together with its Gauss-map remainders.

    tails[k] is z_(k+1) = T^k (z - a0); when the expansion terminates
    after N digits, tails[N] is exactly 0.
    """

    __slots__ = ("start", "tails", "digit_string", "_conv")

    def __init__(self, start: GaussRational, tails, digit_string: DigitString):
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "tails", tuple(tails))
        object.__setattr__(self, "digit_string", digit_string)
        object.__setattr__(self, "_conv", None)

    def __setattr__(self, name, value):
        raise AttributeError("Trajectory is immutable")

    def convergents(self) -> ConvergentSeq:
        if self._conv is None:
            object.__setattr__(self, "_conv", convergents(self.digit_string))
        return self._conv

    def reconstructs_at(self, n: int) -> bool:
        """z = (p_(n-2) z_n + p_(n-1)) / (q_(n-2) z_n + q_(n-1)), exactly."""
        if not 1 <= n <= len(self.tails):
            raise IndexError(n)
        conv = self.convergents()
        p2, q2 = conv.pair(n - 2)
        p1, q1 = conv.pair(n - 1)
        zn = self.tails[n - 1]
        num = zn * p2 + p1
        den = zn * q2 + q1
        return num == self.start * den


def gauss_map_step(z: GaussRational):
    """One step of T on F: returns (digit, next remainder).

    T(0) = 0 by convention: the digit is None and the remainder is 0.
    Raises NotInFundamentalDomain when z does not round to 0.
    """
    if round_nearest(z) != GaussInt(0):
        raise NotInFundamentalDomain(str(z))
    if not z:
        return None, RAT_ZERO
    w = rat_inverse(z)
    digit = round_nearest(w)
    nxt = rat_sub_gauss(w, digit)
    # Eq. (2): emitted digits always satisfy |a|^2 >= 2
    assert abs_sq(digit) >= 2, f"inadmissible digit {digit} from {z}"
    return digit, nxt


def hcf_expand_exact(z: GaussRational, max_depth: int = 64) -> Trajectory:
    """Expand a Gaussian rational; stops at remainder 0 or at max_depth."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    a0 = round_nearest(z)
    cur = rat_sub_gauss(z, a0)
    tails = [cur]
    digits = []
    while cur and len(digits) < max_depth:
        digit, cur = gauss_map_step(cur)
        digits.append(digit)
        tails.append(cur)
    return Trajectory(z, tails, DigitString(a0, digits, not cur))


def hcf_expand_ball(z: ComplexBall, n_digits: int) -> DigitString:
    """Certified expansion: every emitted digit is the true digit of every
    point in the input ball.

    Raises DigitUncertain(step) when the ball straddles a rounding-cell
    boundary (retry with more precision), ZeroStraddle when a remainder
    ball contains 0, both before any wrong digit could be produced.
    """
    if n_digits < 1:
        raise ValueError("n_digits must be >= 1")
    quarter = Fraction(1, 4)
    if z.rad.as_fraction() >= quarter:
        raise DigitUncertain(0, "input radius >= 1/4")
    a0 = z.round_nearest_certified()
    if a0 is None:
        raise DigitUncertain(0)
    cur = z.sub_gauss(a0)
    digits = []
    terminated = False
    for step in range(1, n_digits + 1):
        if cur.is_exact_zero():
            terminated = True
            break
        w = cur.recip(step)
        digit = w.round_nearest_certified()
        if digit is None:
            raise DigitUncertain(step)
        assert abs_sq(digit) >= 2, f"inadmissible certified digit {digit}"
        digits.append(digit)
        cur = w.sub_gauss(digit)
    return DigitString(a0, digits, terminated)


def convergents(d: DigitString) -> ConvergentSeq:
    """Run the matrix recurrence over the digit string."""
    p_prev, p_prev2 = GaussInt(1), GaussInt(0)
    q_prev, q_prev2 = GaussInt(0), GaussInt(1)
    pairs = []
    for n, a in enumerate((d.a0,) + d.digits):
        if n >= 1 and abs_sq(a) < 2:
            raise InadmissibleDigit(f"digit {a} at position {n}")
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        pairs.append((p, q))
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q
    return ConvergentSeq(pairs)


def eval_finite(d: DigitString) -> GaussRational:
    """Exact value of a finite continued fraction, evaluated backward."""
    value = None
    for a in reversed((d.a0,) + d.digits):
        if value is None:
            value = GaussRational.from_int(a)
        else:
            if not value:
                raise EvaluationSingularity("zero tail inverted")
            value = rat_inverse(value) + a
    return value


def _frac_sqrt_upper(fr: Fraction, bits: int = 60) -> float:
    """An upper bound on sqrt(fr) accurate to about 2^-bits relative."""
    if fr == 0:
        return 0.0
    num = fr.numerator << (2 * bits)
    s = isqrt(num // fr.denominator) + 1
    return s / float(1 << bits)


def approx_quality(t: Trajectory, n: int):
    """Scaled approximation error e_n = |z - p_n/q_n| |a_(n+1)| |q_n|^2.

    Returns (upper bound on e_n as a float, certified flag).  The flag is
    the exact statement e_n <= 4 + 2 sqrt(2), decided in integer
    arithmetic: e_n^2 is an exact rational, the ceiling squares to
    24 + 16 sqrt(2).
    """
    digits = t.digit_string.digits
    if not 0 <= n < len(digits):
        raise IndexError(f"digit a_{n + 1} unavailable")
    conv = t.convergents()
    p, q = conv.pair(n)
    diff = t.start - rat_canonical(p, q)
    na = abs_sq(digits[n])
    nq = abs_sq(q)
    e_sq = diff.abs_sq() * na * nq * nq
    certified = Surd(e_sq) <= APPROX_BOUND * APPROX_BOUND
    return _frac_sqrt_upper(e_sq), certified


def lower_bound_holds(t: Trajectory, n: int) -> bool:
    """Exact check of |1/z_(n+1) + q_(n-1)/q_n| >= kappa1 |a_(n+1)|."""
    digits = t.digit_string.digits
    if not 0 <= n < len(digits):
        raise IndexError(f"digit a_{n + 1} unavailable")
    conv = t.convergents()
    _, q_prev = conv.pair(n - 1)
    _, q_cur = conv.pair(n)
    tail = t.tails[n]
    w = rat_inverse(tail) + rat_canonical(q_prev, q_cur)
    lhs_sq = Surd(w.abs_sq())
    rhs_sq = KAPPA1 * KAPPA1 * abs_sq(digits[n])
    return lhs_sq >= rhs_sq
