"""Elements of the prime field F_p."""

from __future__ import annotations

from ..errors import UnsupportedRingError


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Fp:
    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = p
        self.value = value % p

    def _v(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise UnsupportedRingError(f"F_{self.p} and F_{other.p} do not mix")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._v(other)
        return v if v is NotImplemented else Fp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._v(other)
        return v if v is NotImplemented else Fp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._v(other)
        return v if v is NotImplemented else Fp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._v(other)
        return v if v is NotImplemented else Fp(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._v(other)
        if v is NotImplemented:
            return v
        return self * Fp(v, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return bool(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)
