"""Exact arithmetic on Gaussian integers and Gaussian rationals.

GaussInt holds a pair of arbitrary-size Python integers.  GaussRational
keeps a canonical form num/den where den is a positive rational integer:
any Gaussian denominator is cleared by multiplying through with its
conjugate, then the triple (num.re, num.im, den) is reduced by its integer
gcd.  Equal values therefore always have identical representations, which
makes equality, hashing and rounding independent of how a value was built.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero

__all__ = [
    "GaussInt",
    "GaussRational",
    "ZERO",
    "ONE",
    "I",
    "abs_sq",
    "sup_norm",
    "round_nearest",
    "gauss_gcd",
    "rat_canonical",
    "rat_inverse",
    "rat_sub_gauss",
]


class GaussInt:
    """An element of Z[i], immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussInt is immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussInt(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def conj(self):
        return GaussInt(self.re, -self.im)

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        other = _coerce_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    # -- serialization ---------------------------------------------------

    def to_json(self):
        """Decimal strings, so arbitrarily wide integers survive JSON."""
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["re"]), int(obj["im"]))


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)


def _coerce_gauss(value):
    if isinstance(value, GaussInt):
        return value
    if isinstance(value, int):
        return GaussInt(value, 0)
    return NotImplemented


def abs_sq(g: GaussInt) -> int:
    """|g|^2 = re^2 + im^2, exact."""
    return g.re * g.re + g.im * g.im


def sup_norm(g: GaussInt) -> int:
    """max(|re|, |im|)."""
    return max(abs(g.re), abs(g.im))


def _floor_div_round(n: int, d: int) -> int:
    # floor(n/d + 1/2) for positive d; ties round toward +infinity,
    # exactly as forced by the floor definition.
    return (2 * n + d) // (2 * d)


def unit_normalize(g: GaussInt) -> GaussInt:
    """The associate of g in the canonical unit class: re > 0, im >= 0.

    Returns 0 for g = 0.  Exactly one of the four associates i^k * g
    lands in the quarter plane {re > 0, im >= 0}.
    """
    re, im = g.re, g.im
    if re == 0 and im == 0:
        return ZERO
    for _ in range(4):
        if re > 0 and im >= 0:
            return GaussInt(re, im)
        re, im = -im, re
    raise AssertionError("unreachable: one associate must normalize")


def gauss_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    """Greatest common divisor in Z[i], unit-normalized.

    Euclidean algorithm with nearest-integer quotients: the remainder
    r = a - [a/b] b satisfies |r|^2 <= |b|^2 / 2, so the loop terminates.
    """
    while b:
        ns = abs_sq(b)
        t = a * b.conj()
        q = GaussInt(_floor_div_round(t.re, ns), _floor_div_round(t.im, ns))
        a, b = b, a - q * b
    return unit_normalize(a)


class GaussRational:
    """An element of Q(i) in canonical form num/den.

    den is a positive rational integer and gcd(num.re, num.im, den) = 1.
    Do not call the constructor with unreduced data; use rat_canonical
    or the arithmetic operators, which always canonicalize.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: GaussInt, den: int = 1, _reduced=False):
        if not _reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def from_int(cls, g) -> "GaussRational":
        return cls(_coerce_gauss(g), 1, _reduced=True)

    @classmethod
    def from_fractions(cls, re, im=0) -> "GaussRational":
        re = Fraction(re)
        im = Fraction(im)
        den = math.lcm(re.denominator, im.denominator)
        num = GaussInt(re.numerator * (den // re.denominator),
                       im.numerator * (den // im.denominator))
        return cls(num, den, _reduced=True)

    # -- field operations ------------------------------------------------

    def __add__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.num * other.den - other.num * self.den,
                             self.den * other.den)

    def __rsub__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self * rat_inverse(other)

    def __rtruediv__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other * rat_inverse(self)

    def __neg__(self):
        return GaussRational(-self.num, self.den, _reduced=True)

    def conj(self):
        return GaussRational(self.num.conj(), self.den, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"GaussRational({self.num!r}, {self.den})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/{self.den}"

    # -- views -----------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self.num.re, self.den)

    @property
    def im(self) -> Fraction:
        return Fraction(self.num.im, self.den)

    def abs_sq(self) -> Fraction:
        return Fraction(abs_sq(self.num), self.den * self.den)

    def to_complex(self) -> complex:
        return complex(self.num.re / self.den, self.num.im / self.den)

    def to_json(self):
        return {"re": str(self.num.re), "im": str(self.num.im),
                "den": str(self.den)}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussInt(int(obj["re"]), int(obj["im"])), int(obj["den"]))


RAT_ZERO = GaussRational.from_int(0)


def _reduce(num: GaussInt, den: int):
    if den == 0:
        raise DivisionByZero("zero denominator")
    if den < 0:
        num, den = -num, -den
    g = math.gcd(math.gcd(abs(num.re), abs(num.im)), den)
    if g > 1:
        num = GaussInt(num.re // g, num.im // g)
        den //= g
    return num, den


def _coerce_rat(value):
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (GaussInt, int)):
        return GaussRational.from_int(value)
    return NotImplemented


def rat_canonical(num: GaussInt, den: GaussInt) -> GaussRational:
    """num/den for a Gaussian denominator, in canonical form.

    Clears den by its conjugate: num/den = num*conj(den) / |den|^2.
    """
    if not den:
        raise DivisionByZero("zero denominator")
    return GaussRational(num * den.conj(), abs_sq(den))


def rat_inverse(q: GaussRational) -> GaussRational:
    """1/q, canonical.  Raises DivisionByZero on q = 0."""
    if not q:
        raise DivisionByZero("inverting zero")
    return GaussRational(q.num.conj() * q.den, abs_sq(q.num))


def rat_sub_gauss(q: GaussRational, g: GaussInt) -> GaussRational:
    """q - g for a Gaussian integer g."""
    return GaussRational(q.num - g * q.den, q.den)


def round_nearest(z) -> GaussInt:
    """[z] = floor(Re z + 1/2) + i floor(Im z + 1/2).

    Accepts a GaussRational or a pair of Fractions.  Ties at half
    integers round toward +infinity in each coordinate, exactly as the
    floor forces.
    """
    if isinstance(z, GaussRational):
        return GaussInt(_floor_div_round(z.num.re, z.den),
                        _floor_div_round(z.num.im, z.den))
    re, im = z
    re = Fraction(re)
    im = Fraction(im)
    return GaussInt(_floor_div_round(re.numerator, re.denominator),
                    _floor_div_round(im.numerator, im.denominator))
