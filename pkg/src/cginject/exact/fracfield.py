"""Fraction field of a Laurent polynomial ring.

For one variable every element is kept reduced: numerator and denominator
coprime, denominator monic with minimal exponent 0. For several variables no
gcd is taken; the pair is only content-reduced and shifted, and equality is
decided by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import UnsupportedRingError
from .laurent import LaurentPoly


class FracElem:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, LaurentPoly):
            raise TypeError("numerator must be a LaurentPoly")
        if den is None:
            den = LaurentPoly.one(num.nvars)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den, num.nvars)
        if den.nvars != num.nvars:
            raise UnsupportedRingError("numerator and denominator rings differ")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def from_poly(cls, p):
        return cls(p, LaurentPoly.one(p.nvars), _reduced=True)

    @classmethod
    def constant(cls, c, nvars=1):
        return cls(LaurentPoly.constant(c, nvars), LaurentPoly.one(nvars), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, FracElem):
            if other.nvars != self.nvars:
                raise UnsupportedRingError("variable count mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return FracElem.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return FracElem.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FracElem(self.num + o.num, self.den)
        return FracElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FracElem(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FracElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("zero has no inverse")
        return FracElem(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.nvars == 1:
            return self.num == o.num and self.den == o.den
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.nvars == 1:
            return hash((self.num, self.den))
        # no canonical form: only a coarse invariant is safe
        return hash(self.nvars)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("evaluation point is a pole")
        return self.num.evaluate(point) / d

    def __repr__(self):
        return f"FracElem({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _normalize(num, den):
    if not num:
        return LaurentPoly.zero(num.nvars), LaurentPoly.one(num.nvars)
    if num.nvars == 1 and not (den.is_monomial()):
        g = num.gcd(den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    u = den.unit_part()
    if u != 1:
        num = num.exact_div(u)
        den = den.exact_div(u)
    return num, den
