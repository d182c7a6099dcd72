"""Dyadic rationals and certified complex balls.

A ball carries a dyadic center and a dyadic radius that always
over-approximates the distance to the represented exact value.  Addition,
subtraction and multiplication of dyadics are exact; only divisions round,
at a fixed absolute grid 2^-prec, and every rounding error is pushed into
the radius.  Inversion uses the exact Moebius image of a disk: for
|c| > r, the set {1/z : |z - c| <= r} is the disk with center
conj(c)/(|c|^2 - r^2) and radius r/(|c|^2 - r^2).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ZeroStraddle
from .gaussian import GaussInt

__all__ = ["Dyadic", "ComplexBall", "ball_from_fractions", "sqrt_ball"]


class Dyadic:
    """man * 2^exp with arbitrary-size integer man."""

    __slots__ = ("man", "exp")

    def __init__(self, man=0, exp=0):
        man = int(man)
        exp = int(exp)
        if man == 0:
            exp = 0
        else:
            # keep mantissas odd so representations are unique
            shift = (man & -man).bit_length() - 1
            man >>= shift
            exp += shift
        object.__setattr__(self, "man", man)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def from_fraction(cls, q) -> "Dyadic":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, -(den.bit_length() - 1))

    def as_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        e = min(self.exp, other.exp)
        return Dyadic((self.man << (self.exp - e)) + (other.man << (other.exp - e)), e)

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        e = min(self.exp, other.exp)
        return Dyadic((self.man << (self.exp - e)) - (other.man << (other.exp - e)), e)

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        return Dyadic(self.man * other.man, self.exp + other.exp)

    def __neg__(self):
        return Dyadic(-self.man, self.exp)

    def _cmp(self, other) -> int:
        d = self - other
        return (d.man > 0) - (d.man < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.man == other.man and self.exp == other.exp

    def __hash__(self):
        return hash(self.as_fraction())

    def __bool__(self):
        return self.man != 0

    def __float__(self):
        return math.ldexp(self.man, self.exp)

    def __repr__(self):
        return f"Dyadic({self.man}, {self.exp})"


_HALF = Dyadic(1, -1)


def _div_nearest(a: Dyadic, b: Dyadic, prec: int) -> Dyadic:
    """a/b rounded to the nearest multiple of 2^-prec (error <= 2^-prec-1)."""
    s = a.exp - b.exp + prec
    num, den = a.man, b.man
    if den < 0:
        num, den = -num, -den
    if s >= 0:
        num <<= s
    else:
        den <<= -s
    q = (2 * num + den) // (2 * den)
    return Dyadic(q, -prec)


def _div_up(a: Dyadic, b: Dyadic, prec: int) -> Dyadic:
    """a/b rounded up (toward +inf) to a multiple of 2^-prec; a, b >= 0."""
    s = a.exp - b.exp + prec
    num, den = a.man, b.man
    if s >= 0:
        num <<= s
    else:
        den <<= -s
    q = -((-num) // den)
    return Dyadic(q, -prec)


def _round_coord(x: Dyadic, prec: int):
    """(rounded value, error bound) at grid 2^-prec."""
    if x.exp >= -prec:
        return x, Dyadic(0)
    shift = -prec - x.exp
    q = (x.man + (1 << (shift - 1))) >> shift
    return Dyadic(q, -prec), Dyadic(1, -prec - 1)


class ComplexBall:
    """Certified complex value: dyadic center, radius, working precision."""

    __slots__ = ("re", "im", "rad", "prec")

    def __init__(self, re: Dyadic, im: Dyadic, rad: Dyadic, prec: int):
        if rad.man < 0:
            raise ValueError("negative radius")
        if prec < 4:
            raise ValueError("precision too small")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "rad", rad)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexBall is immutable")

    def is_exact_zero(self) -> bool:
        return self.re.man == 0 and self.im.man == 0 and self.rad.man == 0

    def excludes_zero(self) -> bool:
        return self.re * self.re + self.im * self.im > self.rad * self.rad

    def sub_gauss(self, g: GaussInt) -> "ComplexBall":
        return ComplexBall(self.re - Dyadic(g.re), self.im - Dyadic(g.im),
                           self.rad, self.prec)

    def rotate_i(self) -> "ComplexBall":
        """Multiply the represented value by i (exact)."""
        return ComplexBall(-self.im, self.re, self.rad, self.prec)

    def recip(self, step=0) -> "ComplexBall":
        """1/ball as a certified ball; requires 0 strictly outside."""
        if not self.excludes_zero():
            raise ZeroStraddle(step)
        d = self.re * self.re + self.im * self.im - self.rad * self.rad
        prec = self.prec
        nre, e1 = _round_coord_div(self.re, d, prec)
        nim, e2 = _round_coord_div(-self.im, d, prec)
        nrad = _div_up(self.rad, d, prec) + e1 + e2
        return ComplexBall(nre, nim, nrad, prec)

    def round_nearest_certified(self):
        """The Gaussian integer every point of the ball rounds to, or None.

        Demands the whole ball strictly inside the half-open rounding cell,
        so the answer is independent of the cell's boundary conventions.
        """
        kre = _round_half_up(self.re)
        kim = _round_half_up(self.im)
        for center, k in ((self.re, kre), (self.im, kim)):
            off = center - Dyadic(k)
            if not (_HALF - off > self.rad and off + _HALF > self.rad):
                return None
        return GaussInt(kre, kim)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return (f"ComplexBall({float(self.re)!r} + {float(self.im)!r}i "
                f"+- {float(self.rad)!r}, prec={self.prec})")


def _round_coord_div(a: Dyadic, d: Dyadic, prec: int):
    q = _div_nearest(a, d, prec)
    return q, Dyadic(1, -prec - 1)


def _round_half_up(x: Dyadic) -> int:
    # floor(x + 1/2) on exact dyadics
    y = x + _HALF
    if y.exp >= 0:
        return y.man << y.exp
    return y.man >> -y.exp


def ball_from_fractions(re, im, prec: int) -> ComplexBall:
    """Exact rational point as a ball; dyadic inputs get radius 0."""
    re, im = Fraction(re), Fraction(im)
    rad = Dyadic(0)
    out = []
    for q in (re, im):
        den = q.denominator
        if den & (den - 1) == 0:
            out.append(Dyadic.from_fraction(q))
        else:
            c, err = _round_coord_div(Dyadic(q.numerator), Dyadic(den), prec)
            out.append(c)
            rad = rad + err
    return ComplexBall(out[0], out[1], rad, prec)


def sqrt_ball(n: int, prec: int) -> ComplexBall:
    """A ball containing sqrt(n) for a non-negative integer n."""
    if n < 0:
        raise ValueError("negative radicand")
    s = math.isqrt(n << (2 * prec))
    # s*2^-prec <= sqrt(n) < (s+1)*2^-prec
    return ComplexBall(Dyadic(2 * s + 1, -prec - 1), Dyadic(0),
                       Dyadic(1, -prec - 1), prec)
