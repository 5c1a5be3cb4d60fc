"""Groups realized inside GL(k, Q) x Z^r.

An element is a pair ``(mat, hvec)``: an invertible rational matrix and an
integer vector. Multiplication is componentwise, so ``hvec`` is a homomorphism
onto a sublattice of Z^r and the group is its own faithful image.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from ..errors import (
    HypothesisViolation,
    KernelNotFiniteError,
    MalformedInputError,
    ShapeError,
)
from ..exact.lattice import hnf_with_transform, integer_kernel
from ..exact.linalg import inverse as mat_inverse
from ..exact.matrix import QQ, Matrix
from ..exact.primefield import is_prime
from ..words import format_word, invert_word
from .finite import FiniteGroupTable

DEFAULT_CAP = 64


def _canon(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise MalformedInputError(f"matrix entries must be rational, got {x!r}")


class RealizedElement:
    __slots__ = ("mat", "hvec", "_hash")

    def __init__(self, mat, hvec):
        if isinstance(mat, Matrix):
            mat = mat.data
        mat = tuple(tuple(_canon(x) for x in row) for row in mat)
        k = len(mat)
        if any(len(row) != k for row in mat):
            raise ShapeError("element matrix must be square")
        self.mat = mat
        self.hvec = tuple(int(h) for h in hvec)
        self._hash = hash((self.mat, self.hvec))

    @classmethod
    def identity(cls, k, r):
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), (0,) * r)

    @property
    def k(self):
        return len(self.mat)

    @property
    def r(self):
        return len(self.hvec)

    @property
    def matrix(self):
        return Matrix(self.mat, ring=QQ, shape=(self.k, self.k))

    def is_identity(self):
        return not any(self.hvec) and all(
            x == (i == j) for i, row in enumerate(self.mat) for j, x in enumerate(row))

    def in_kernel(self):
        return not any(self.hvec)

    def __mul__(self, other):
        if not isinstance(other, RealizedElement):
            return NotImplemented
        if self.k != other.k or self.r != other.r:
            raise ShapeError("elements of different groups")
        cols = list(zip(*other.mat))
        mat = []
        for row in self.mat:
            nz = [(i, a) for i, a in enumerate(row) if a]
            mat.append(tuple(sum(a * c[i] for i, a in nz if c[i]) for c in cols))
        obj = RealizedElement.__new__(RealizedElement)
        obj.mat = tuple(tuple(_canon(x) for x in row) for row in mat)
        obj.hvec = tuple(a + b for a, b in zip(self.hvec, other.hvec))
        obj._hash = hash((obj.mat, obj.hvec))
        return obj

    def inverse(self):
        try:
            inv = mat_inverse(self.matrix)
        except ZeroDivisionError:
            raise MalformedInputError("element matrix is singular") from None
        return RealizedElement(inv.data, tuple(-h for h in self.hvec))

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = RealizedElement.identity(self.k, self.r)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self, x):
        """``self * x * self^-1``."""
        return self * x * self.inverse()

    def commutes_with(self, other):
        return self * other == other * self

    def __eq__(self, other):
        if not isinstance(other, RealizedElement):
            return NotImplemented
        return self.hvec == other.hvec and self.mat == other.mat

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RealizedElement(k={self.k}, h={list(self.hvec)})"


class RealizedGroup:
    """A finitely generated Gamma with finite normal P = ker(hvec).

    ``kernel_elements[i]`` is realized by the word ``kernel_words[i]`` in the
    alphabet ``generator_names + p_names``; index 0 is the identity.
    """

    def __init__(self, k, r, generators, generator_names, p_generators, p_names,
                 kernel_elements, kernel_words, prime, cap):
        self.k = k
        self.r = r
        self.generators = tuple(generators)
        self.generator_names = tuple(generator_names)
        self.p_generators = tuple(p_generators)
        self.p_names = tuple(p_names)
        self.kernel_elements = tuple(kernel_elements)
        self.kernel_words = tuple(kernel_words)
        self.kernel_index = {q: i for i, q in enumerate(self.kernel_elements)}
        self.prime = prime
        self.cap = cap
        self._named = dict(zip(self.generator_names, self.generators))
        self._named.update(zip(self.p_names, self.p_generators))
        self._table = None
        self._inverses = {}

    # element access

    @property
    def names(self):
        return self.generator_names + self.p_names

    def identity(self):
        return RealizedElement.identity(self.k, self.r)

    def element(self, name):
        try:
            return self._named[name]
        except KeyError:
            raise MalformedInputError(f"unknown generator {name!r}") from None

    def inverse_of(self, name):
        if name not in self._inverses:
            self._inverses[name] = self.element(name).inverse()
        return self._inverses[name]

    def evaluate_word(self, word):
        out = self.identity()
        for name, e in word:
            base = self.element(name) if e > 0 else self.inverse_of(name)
            for _ in range(abs(e)):
                out = out * base
        return out

    @property
    def order_P(self):
        return len(self.kernel_elements)

    def in_kernel(self, g):
        return g in self.kernel_index

    def kernel_position(self, g):
        try:
            return self.kernel_index[g]
        except KeyError:
            raise MalformedInputError("element is not in the finite kernel P") from None

    def kernel_table(self):
        if self._table is None:
            els = self.kernel_elements
            self._table = FiniteGroupTable(
                [[self.kernel_index[a * b] for b in els] for a in els], identity=0, check=False)
        return self._table

    def conjugation_perm(self, g):
        """Permutation of kernel indices induced by ``q -> g q g^-1``."""
        gi = g.inverse()
        return tuple(self.kernel_index[g * q * gi] for q in self.kernel_elements)

    def image_lattice(self):
        """Hermite basis of phi(Gamma) in Z^r plus lifts as generator exponent vectors."""
        hs = [g.hvec for g in self.generators]
        H, U = hnf_with_transform(hs, self.r)
        return H, U

    def is_p_group(self, p):
        n = self.order_P
        while n % p == 0:
            n //= p
        return n == 1

    def describe(self):
        return {"k": self.k, "r": self.r, "order_P": self.order_P, "prime": self.prime,
                "generators": list(self.generator_names), "p_generators": list(self.p_names)}

    def __repr__(self):
        return f"RealizedGroup(k={self.k}, r={self.r}, |P|={self.order_P})"


def _closure(gens, gen_words, identity, cap):
    """Subgroup generated by finite-order elements, with words; BFS by right multiplication."""
    elems = [identity]
    words = [()]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        x, w = elems[i], words[i]
        for g, gw in zip(gens, gen_words):
            y = x * g
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                words.append(w + gw)
                if len(elems) > cap:
                    raise KernelNotFiniteError(
                        f"kernel closure exceeds cap {cap}; P may be infinite")
        i += 1
    return elems, words, index


def build_realized_group(generators, p_generators=(), prime=None, cap=DEFAULT_CAP,
                         generator_names=None, p_names=None):
    """Realize Gamma and enumerate P as the normal closure of ``p_generators``.

    Also checks that P is all of ker(hvec) on Gamma: the images of commutators of
    generators and of integer relations among generator hvecs must lie in P.
    """
    generators = list(generators)
    p_generators = list(p_generators)
    if not generators and not p_generators:
        raise MalformedInputError("a group needs at least one generator")
    sample = (generators + p_generators)[0]
    k, r = sample.k, sample.r
    for g in generators + p_generators:
        if g.k != k or g.r != r:
            raise ShapeError("generators have inconsistent sizes")
        if g.inverse() is None:
            raise MalformedInputError("generator is not invertible")
    for q in p_generators:
        if any(q.hvec):
            raise MalformedInputError("p-generators must have zero h-vector")
    if prime is not None and not is_prime(prime):
        raise MalformedInputError(f"{prime} is not prime")
    if generator_names is None:
        generator_names = [f"g{i + 1}" for i in range(len(generators))]
    if p_names is None:
        p_names = [f"q{i + 1}" for i in range(len(p_generators))]
    if len(set(generator_names) | set(p_names)) != len(generator_names) + len(p_names):
        raise MalformedInputError("generator names must be distinct")

    identity = RealizedElement.identity(k, r)
    gens = list(p_generators)
    gen_words = [((n, 1),) for n in p_names]
    g_inv = [g.inverse() for g in generators]
    while True:
        elems, words, index = _closure(gens, gen_words, identity, cap)
        added = False
        for g, gi, gn in zip(generators, g_inv, generator_names):
            for s, sw in list(zip(gens, gen_words)):
                c = g * s * gi
                if c not in index:
                    gens.append(c)
                    gen_words.append(((gn, 1),) + sw + ((gn, -1),))
                    added = True
        if not added:
            break

    G = RealizedGroup(k, r, generators, generator_names, p_generators, p_names,
                      elems, words, prime, cap)

    # ker(hvec) must be P: commutators and integer relations of generators land in P
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            a, b = generators[i], generators[j]
            c = a * b * a.inverse() * b.inverse()
            if c not in index:
                raise KernelNotFiniteError(
                    f"commutator [{generator_names[i]}, {generator_names[j]}] lies outside P; "
                    "P is not the full kernel of the h-vector map")
    for rel in integer_kernel([g.hvec for g in generators], r):
        word = tuple((generator_names[i], c) for i, c in enumerate(rel) if c)
        if G.evaluate_word(word) not in index:
            raise KernelNotFiniteError(
                f"relation {format_word(word)} has trivial h-vector but lies outside P")

    if prime is not None and not G.is_p_group(prime):
        raise HypothesisViolation(
            f"|P| = {G.order_P} is not a power of {prime}", check="p-group")
    return G


def enumerate_ball(G, radius):
    """Elements given by generator words of length <= radius (as a dict element -> word)."""
    found = {G.identity(): ()}
    frontier = [(G.identity(), ())]
    steps = []
    for n in G.names:
        steps.append((G.element(n), ((n, 1),)))
        steps.append((G.inverse_of(n), ((n, -1),)))
    for _ in range(radius):
        nxt = []
        for x, w in frontier:
            for s, sw in steps:
                y = x * s
                if y not in found:
                    found[y] = w + sw
                    nxt.append((y, w + sw))
        frontier = nxt
    return found
