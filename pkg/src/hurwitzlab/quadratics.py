"""Exact arithmetic on values p + c*sqrt(d) with rational p, c.

Every coordinate that appears in the cylinder-region geometry is of this
shape: line-line intersections are rational, line-circle and circle-circle
intersections of the generated unit-circle family add a single square
root.  Keeping the radicand squarefree makes the representation unique,
so equality and sign tests are exact.

Signs of mixed-radical combinations (needed when sorting intersection
ordinates from different circles) are decided by at most two squarings.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Surd", "sqrt_fraction", "rational_between"]


def _squarefree_split(n: int):
    # n >= 0 -> (s, m) with n = s^2 * m, m squarefree
    if n == 0:
        return 0, 1
    s, m, p = 1, n, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, m


class Surd:
    """p + c*sqrt(d) with p, c rational and d a squarefree positive int.

    Rational values are stored with c = 0, d = 1.
    """

    __slots__ = ("p", "c", "d")

    def __init__(self, p, c=0, d=1):
        p = Fraction(p)
        c = Fraction(c)
        d = int(d)
        if c == 0 or d == 0:
            p, c, d = p + (c * 0), Fraction(0), 1
        elif d < 0:
            raise ValueError("negative radicand")
        else:
            s, m = _squarefree_split(d)
            c, d = c * s, m
            if d == 1:
                p, c, d = p + c, Fraction(0), 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @property
    def is_rational(self):
        return self.c == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.p

    # -- ring operations (same radicand only) -----------------------------

    def _compatible(self, other):
        if isinstance(other, Surd):
            if self.c and other.c and self.d != other.d:
                raise ValueError("mixing distinct radicands")
            return other
        return Surd(other)

    def __add__(self, other):
        other = self._compatible(other)
        d = self.d if self.c else other.d
        return Surd(self.p + other.p, self.c + other.c, d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._compatible(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Surd(-self.p, -self.c, self.d)

    def __mul__(self, other):
        other = self._compatible(other)
        d = self.d if self.c else other.d
        return Surd(self.p * other.p + self.c * other.c * d,
                    self.p * other.c + self.c * other.p, d)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.p * self.p - self.c * self.c * self.d
        if norm == 0:
            raise ZeroDivisionError("inverting zero surd")
        return Surd(self.p / norm, -self.c / norm, self.d)

    def __truediv__(self, other):
        return self * self._compatible(other).inverse()

    def __pow__(self, k: int):
        out = Surd(1)
        base = self
        k = int(k)
        if k < 0:
            base, k = base.inverse(), -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of p + c*sqrt(d)."""
        p, c, d = self.p, self.c, self.d
        if c == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if c > 0 else -1
        if p > 0 and c > 0:
            return 1
        if p < 0 and c < 0:
            return -1
        # opposite signs: compare p^2 with c^2 d
        lhs, rhs = p * p, c * c * d
        if lhs == rhs:
            return 0
        return (1 if p > 0 else -1) if lhs > rhs else (1 if c > 0 else -1)

    @staticmethod
    def compare(a: "Surd", b: "Surd") -> int:
        """Exact sign of a - b, radicands may differ."""
        if a.c == 0 or b.c == 0 or a.d == b.d:
            d = a.d if a.c else b.d
            return Surd(a.p - b.p, a.c - b.c, d).sign()
        # a - b = e + c1*sqrt(d1) - c2*sqrt(d2) with d1 != d2
        e = a.p - b.p
        # sign of s = c1 sqrt(d1) - c2 sqrt(d2)
        t1, t2 = a.c * a.c * a.d, b.c * b.c * b.d
        if a.c > 0 and b.c < 0:
            s_sign = 1
        elif a.c < 0 and b.c > 0:
            s_sign = -1
        else:
            pos = a.c > 0  # both same sign
            if t1 == t2:
                s_sign = 0
            elif t1 > t2:
                s_sign = 1 if pos else -1
            else:
                s_sign = -1 if pos else 1
        if e == 0:
            return s_sign
        e_sign = 1 if e > 0 else -1
        if s_sign == 0:
            return e_sign
        if e_sign == s_sign:
            return e_sign
        # |e| versus |s|: e^2 - s^2 = e^2 - t1 - t2 + 2 c1 c2 sqrt(d1 d2)
        diff = Surd(e * e - t1 - t2, 2 * a.c * b.c, a.d * b.d).sign()
        if diff == 0:
            return 0
        return e_sign if diff > 0 else s_sign

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return Surd.compare(self, Surd(other) if not isinstance(other, Surd) else other) == 0

    def __lt__(self, other):
        other = other if isinstance(other, Surd) else Surd(other)
        return Surd.compare(self, other) < 0

    def __le__(self, other):
        other = other if isinstance(other, Surd) else Surd(other)
        return Surd.compare(self, other) <= 0

    def __gt__(self, other):
        other = other if isinstance(other, Surd) else Surd(other)
        return Surd.compare(self, other) > 0

    def __ge__(self, other):
        other = other if isinstance(other, Surd) else Surd(other)
        return Surd.compare(self, other) >= 0

    def __hash__(self):
        return hash((self.p, self.c, self.d))

    def __float__(self):
        return float(self.p) + float(self.c) * self.d ** 0.5

    def __repr__(self):
        if self.c == 0:
            return f"Surd({self.p})"
        return f"Surd({self.p} + {self.c}*sqrt({self.d}))"


def sqrt_fraction(q) -> Surd:
    """sqrt of a non-negative rational, as a Surd."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    # sqrt(n/m) = sqrt(n m) / m
    return Surd(0, Fraction(1, q.denominator), q.numerator * q.denominator)


def rational_between(a: Surd, b: Surd) -> Fraction:
    """Some rational strictly between a < b, found by dyadic refinement."""
    if Surd.compare(a, b) >= 0:
        raise ValueError("need a < b")
    lo, hi = float(a), float(b)
    k = 1
    while True:
        scale = 1 << k
        # candidate grid points near the midpoint first, then sweep
        start = int((lo + hi) / 2 * scale) - 2
        for m in range(start, start + 5):
            cand = Fraction(m, scale)
            cs = Surd(cand)
            if Surd.compare(a, cs) < 0 and Surd.compare(cs, b) < 0:
                return cand
        k += 1
        if k > 4096:
            raise AssertionError("rational_between failed to converge")
