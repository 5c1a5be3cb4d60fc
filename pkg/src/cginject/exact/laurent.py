"""Multivariate Laurent polynomials with rational coefficients.

A ``LaurentPoly`` in ``r`` variables is a finite map from exponent vectors in
Z^r to nonzero rationals. With ``r == 0`` it degenerates to a rational
constant. Values are immutable and hashable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from ..errors import MalformedInputError, UnsupportedRingError


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"not a rational coefficient: {c!r}")


def _canon(c):
    # ints hash and compare like Fractions but multiply much faster
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms=None, nvars=1):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise MalformedInputError(
                        f"exponent {exp} has wrong length for {nvars} variables")
                c = _frac(c)
                if c:
                    clean[exp] = _canon(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def constant(cls, c, nvars=1):
        c = _frac(c)
        return cls._raw({(0,) * nvars: _canon(c)} if c else {}, nvars)

    @classmethod
    def zero(cls, nvars=1):
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars=1):
        return cls._raw({(0,) * nvars: 1}, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(exps)
        c = _frac(coeff)
        return cls._raw({exps: _canon(c)} if c else {}, len(exps))

    @classmethod
    def variable(cls, i, nvars=1):
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): 1}, nvars)

    @classmethod
    def from_coeffs(cls, coeffs, shift=0):
        """Univariate polynomial ``sum coeffs[i] * t^(i + shift)``."""
        return cls({(i + shift,): c for i, c in enumerate(coeffs) if c}, 1)

    # coercion

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise UnsupportedRingError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw({}, self.nvars)
            return LaurentPoly._raw(
                {e: _canon(_frac(c * other)) for e, c in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        if self.nvars == 1:
            for (e1,), c1 in a.items():
                for (e2,), c2 in b.items():
                    k = (e1 + e2,)
                    out[k] = out.get(k, 0) + c1 * c2
        else:
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw(
            {e: _canon(_frac(c)) for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible in a Laurent ring")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial(tuple(x * n for x in e), _frac(c) ** n)
        result = LaurentPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _frac(other))
        return self.exact_div(other)

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.constant(other, self.nvars).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self):
        return Fraction(self.terms.get((0,) * self.nvars, 0))

    def is_monomial(self):
        return len(self.terms) == 1

    is_unit = is_monomial

    # structure

    def leading(self):
        """Lex-largest ``(exponent, coefficient)``."""
        e = max(self.terms)
        return e, self.terms[e]

    def trailing(self):
        e = min(self.terms)
        return e, self.terms[e]

    def min_exponents(self):
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self):
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exps):
        """Multiply by the monomial ``x^exps``."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
            self.nvars)

    def normalized_shift(self):
        """Return ``(poly, m)`` with ``self == poly * x^m`` and ``poly`` a polynomial
        not divisible by any variable."""
        if not self.terms:
            return self, (0,) * self.nvars
        m = self.min_exponents()
        return self.shift(tuple(-x for x in m)), m

    def span(self):
        """Degree of a univariate Laurent polynomial up to units."""
        self._require_univariate()
        if not self.terms:
            return -1
        es = [e[0] for e in self.terms]
        return max(es) - min(es)

    def content(self):
        """Positive rational ``c`` so that ``self / c`` has coprime integer coefficients."""
        from math import gcd
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = _frac(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def coefficients(self):
        """Dense univariate coefficient list from the minimal exponent upward."""
        self._require_univariate()
        if not self.terms:
            return [], 0
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        out = [Fraction(0)] * (hi - lo + 1)
        for (e,), c in self.terms.items():
            out[e - lo] = _frac(c)
        return out, lo

    # evaluation

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = _frac(c)
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total

    def evaluate_mod(self, point, prime):
        """Image under ``Z_(p)[x^+-1] -> F_p`` at an integer point (no zero coordinates).

        Raises ZeroDivisionError when a coefficient denominator is divisible by ``prime``.
        """
        total = 0
        for e, c in self.terms.items():
            c = _frac(c)
            if c.denominator % prime == 0:
                raise ZeroDivisionError("coefficient not p-integral")
            v = c.numerator * pow(c.denominator, -1, prime)
            for x, k in zip(point, e):
                v = v * pow(x, k, prime) % prime
            total += v
        return total % prime

    # division

    def exact_div(self, other):
        """Quotient in the Laurent ring; raises ``ArithmeticError`` if not exact."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.terms:
            return LaurentPoly._raw({}, self.nvars)
        if other.is_monomial():
            (e, c), = other.terms.items()
            inv = Fraction(1) / _frac(c)
            return LaurentPoly._raw(
                {tuple(a - b for a, b in zip(k, e)): _canon(_frac(v * inv))
                 for k, v in self.terms.items()}, self.nvars)
        if self.nvars == 1:
            q, r = self.divmod_univariate(other)
            if r:
                raise ArithmeticError("inexact Laurent division")
            return q
        # lex order on Z^r is a group order, so leading terms multiply
        lb, cb = other.leading()
        lo = tuple(a - b for a, b in zip(self.min_exponents(), other.min_exponents()))
        hi = tuple(a - b for a, b in zip(self.max_exponents(), other.max_exponents()))
        cb = Fraction(1) / _frac(cb)
        rem = dict(self.terms)
        quot = {}
        nv = self.nvars
        while rem:
            le = max(rem)
            qe = tuple(a - b for a, b in zip(le, lb))
            if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
                raise ArithmeticError("inexact Laurent division")
            qc = _frac(rem[le]) * cb
            quot[qe] = _canon(qc)
            for e, c in other.terms.items():
                k = tuple(a + b for a, b in zip(e, qe))
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = _canon(_frac(v))
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(quot, nv)

    def divides(self, other):
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def divmod_univariate(self, other):
        """Euclidean division in Q[t^+-1] with respect to ``span``."""
        self._require_univariate()
        if not other.terms:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.terms:
            return LaurentPoly._raw({}, 1), LaurentPoly._raw({}, 1)
        a, sa = self.coefficients()
        b, sb = other.coefficients()
        q, r = _poly_divmod(a, b)
        return (LaurentPoly.from_coeffs(q, sa - sb),
                LaurentPoly.from_coeffs(r, sa))

    def gcd(self, other):
        """Unit-normal gcd of univariate Laurent polynomials."""
        self._require_univariate()
        a, _ = self.coefficients()
        b, _ = other.coefficients()
        g = _poly_gcd(a, b)
        return LaurentPoly.from_coeffs(g)

    def unit_normal(self):
        """Associate that is monic with minimal exponent 0 (univariate); for
        several variables, lex-leading coefficient 1 and minimal exponents 0."""
        if not self.terms:
            return self
        p, _ = self.normalized_shift()
        _, lc = p.leading()
        return p * (Fraction(1) / _frac(lc))

    def unit_part(self):
        """The unit ``u`` with ``self == u * self.unit_normal()``."""
        p, m = self.normalized_shift()
        _, lc = p.leading()
        return LaurentPoly.monomial(m, lc)

    def _require_univariate(self):
        if self.nvars != 1:
            raise UnsupportedRingError("operation requires a univariate Laurent ring")

    # display

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["t"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = _frac(self.terms[e])
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def _strip(a):
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = _strip(list(a))
    b = _strip(list(b))
    if len(a) < len(b):
        return [], a
    inv = Fraction(1) / b[-1]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = a
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = c * inv
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return _strip(q), _strip(r[:db])


def _primitive_ints(a):
    """Integer primitive part of a rational coefficient list (sign kept)."""
    den = 1
    for c in a:
        if isinstance(c, Fraction):
            den = math.lcm(den, c.denominator)
    v = [int(c * den) for c in a]
    g = 0
    for c in v:
        g = math.gcd(g, c)
    return [c // g for c in v] if g > 1 else v


def _poly_gcd(a, b):
    # primitive pseudo-remainder sequence over Z; avoids rational coefficient swell
    a = _strip(_primitive_ints(_strip(list(a))))
    b = _strip(_primitive_ints(_strip(list(b))))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = list(a)
        db = len(b) - 1
        lb = b[-1]
        while len(r) > db and r:
            lr = r[-1]
            shift = len(r) - 1 - db
            r = [x * lb for x in r]
            for j in range(db + 1):
                r[shift + j] -= lr * b[j]
            _strip(r)
        a, b = b, _strip(_primitive_ints(r)) if r else []
    if not a:
        return []
    # drop factors of t: units in the Laurent ring
    while a and not a[0]:
        a.pop(0)
    inv = Fraction(1, a[-1])
    return [_canon(c * inv) for c in a]
