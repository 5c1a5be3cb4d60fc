"""Finite groups given by multiplication tables."""

from __future__ import annotations

from itertools import product as iproduct

from ..errors import CertificateInvalidError, MalformedInputError

DEFAULT_AUT_BOUND = 64


class FiniteGroupTable:
    """Group on ``{0, ..., n-1}`` with ``mul(a, b) = table[a][b]``."""

    def __init__(self, table, identity=0, labels=None, check=True):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise MalformedInputError("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for row in table for x in row):
            raise MalformedInputError("table entry out of range")
        self.table = table
        self.identity = identity
        self.labels = tuple(labels) if labels is not None else None
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == identity:
                    inv[a] = b
                    break
        self._inv = tuple(inv)
        if check:
            self.check_axioms()

    def check_axioms(self):
        n, t, e = self.order, self.table, self.identity
        for a in range(n):
            if t[e][a] != a or t[a][e] != a:
                raise MalformedInputError(f"{e} is not a two-sided identity")
            if self._inv[a] is None or t[self._inv[a]][a] != e:
                raise MalformedInputError(f"element {a} has no inverse")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise MalformedInputError(f"associativity fails at ({a}, {b}, {c})")

    @property
    def order(self):
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        return self._inv[a]

    def power(self, a, n):
        if n < 0:
            a, n = self._inv[a], -n
        out = self.identity
        for _ in range(n):
            out = self.table[out][a]
        return out

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def commutator(self, a, b):
        t, i = self.table, self._inv
        return t[t[t[a][b]][i[a]]][i[b]]

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def center(self):
        t = self.table
        n = self.order
        return frozenset(a for a in range(n) if all(t[a][b] == t[b][a] for b in range(n)))

    def exponent(self, subset=None):
        from math import lcm
        e = 1
        for a in (range(self.order) if subset is None else subset):
            e = lcm(e, self.element_order(a))
        return e

    def subgroup_generated(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generators(self):
        """A small generating set, chosen greedily in index order."""
        gens = []
        sub = frozenset([self.identity])
        for a in range(self.order):
            if a not in sub:
                gens.append(a)
                sub = self.subgroup_generated(gens)
                if len(sub) == self.order:
                    break
        return gens

    # constructors

    @classmethod
    def from_elements(cls, elements, mul, identity=None):
        """Table of a concrete finite group given as hashable elements."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        table = []
        for x in elements:
            row = []
            for y in elements:
                z = mul(x, y)
                if z not in index:
                    raise MalformedInputError("element set is not closed under multiplication")
                row.append(index[z])
            table.append(row)
        e = 0 if identity is None else index[identity]
        return cls(table, identity=e, labels=elements)

    @classmethod
    def cyclic(cls, n):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def direct_product(cls, g, h):
        m = h.order
        n = g.order * m
        table = [[g.table[a // m][b // m] * m + h.table[a % m][b % m] for b in range(n)]
                 for a in range(n)]
        return cls(table, identity=g.identity * m + h.identity)

    @classmethod
    def quaternion(cls):
        # elements +-1, +-i, +-j, +-k encoded as (sign, unit) with unit in 1,i,j,k
        units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"),
                 ("1", "k"): (1, "k"), ("i", "1"): (1, "i"), ("j", "1"): (1, "j"),
                 ("k", "1"): (1, "k"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
                 ("k", "k"): (-1, "1"), ("i", "j"): (1, "k"), ("j", "k"): (1, "i"),
                 ("k", "i"): (1, "j"), ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"),
                 ("i", "k"): (-1, "j")}
        elems = [(s, u) for s in (1, -1) for u in "1ijk"]

        def mul(x, y):
            s, u = units[(x[1], y[1])]
            return (x[0] * y[0] * s, u)

        return cls.from_elements(elems, mul)


# --- automorphisms ------------------------------------------------------------------

def _extend_hom(P, gens, images):
    """Extend ``gens[i] -> images[i]`` to a map on all of P, or None if inconsistent."""
    t = P.table
    f = {P.identity: P.identity}
    frontier = [P.identity]
    while frontier:
        nxt = []
        for x in frontier:
            fx = f[x]
            for g, h in zip(gens, images):
                y = t[x][g]
                fy = t[fx][h]
                if y in f:
                    if f[y] != fy:
                        return None
                else:
                    f[y] = fy
                    nxt.append(y)
        frontier = nxt
    if len(f) != P.order:
        return None
    perm = tuple(f[x] for x in range(P.order))
    if len(set(perm)) != P.order:
        return None
    # a bijection defined along a spanning search is a homomorphism only if it
    # respects every product, which we check in full
    for a in range(P.order):
        for b in range(P.order):
            if perm[t[a][b]] != t[perm[a]][perm[b]]:
                return None
    return perm


def automorphism_group(P, bound=DEFAULT_AUT_BOUND):
    """All automorphisms of ``P`` as permutations of its element indices.

    Brute force over images of a generating set, pruned by element orders.
    """
    if P.order > bound:
        raise MalformedInputError(f"group of order {P.order} exceeds automorphism bound {bound}")
    gens = P.generators()
    if not gens:
        return [tuple(range(P.order))]
    orders = [P.element_order(a) for a in range(P.order)]
    candidates = [[b for b in range(P.order) if orders[b] == orders[g]] for g in gens]
    auts = []
    for images in iproduct(*candidates):
        perm = _extend_hom(P, gens, images)
        if perm is not None:
            auts.append(perm)
    auts.sort()
    return auts


def compose(p1, p2):
    """Permutation ``x -> p1[p2[x]]``."""
    return tuple(p1[x] for x in p2)


def invert_perm(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_power(p, n):
    if n < 0:
        p, n = invert_perm(p), -n
    out = tuple(range(len(p)))
    for _ in range(n):
        out = compose(p, out)
    return out


# --- series and quotients -------------------------------------------------------------

def normal_closure(P, subset):
    t, inv = P.table, P.inverse
    gens = set(subset)
    gens.update(t[t[g][x]][inv(g)] for x in list(gens) for g in range(P.order))
    while True:
        sub = P.subgroup_generated(gens)
        conj = {t[t[g][x]][inv(g)] for x in sub for g in range(P.order)}
        if conj <= sub:
            return sub
        gens |= conj


def lower_central_series(P):
    """``[P, P_0 = P, P_1 = [P, P], ...]`` down to the first repeated term."""
    series = [frozenset(range(P.order))]
    while True:
        cur = series[-1]
        comms = {P.commutator(a, b) for a in range(P.order) for b in cur}
        nxt = normal_closure(P, comms)
        if nxt == cur:
            return series
        series.append(nxt)
        if len(nxt) == 1:
            return series


def quotient_invariants(P, big, small):
    """Invariant factors (elementary divisors by prime) of an abelian quotient big/small.

    Raises CertificateInvalidError if ``small`` is not normal in ``big`` or the
    quotient is not abelian.
    """
    t, inv = P.table, P.inverse
    for a in big:
        for b in small:
            if t[t[a][b]][inv(a)] not in small:
                raise CertificateInvalidError("subgroup is not normal in the larger term")
        for c in big:
            if P.commutator(a, c) not in small:
                raise CertificateInvalidError("quotient of consecutive terms is not abelian")
    order = len(big) // len(small)
    if len(big) % len(small):
        raise CertificateInvalidError("term order does not divide its predecessor")
    invariants = []
    m = order
    p = 2
    primes = []
    while m > 1:
        while m % p == 0:
            m //= p
            if p not in primes:
                primes.append(p)
        p += 1
    for p in primes:
        # n_j = #{x in quotient : x^(p^j) = 1}; gives partition of the p-part
        counts = [1]
        j = 1
        part = 1
        while order % (part * p) == 0:
            part *= p
        while counts[-1] < part:
            pj = p ** j
            cosets = set()
            for a in big:
                if P.power(a, pj) in small:
                    cosets.add(frozenset(t[a][b] for b in small))
            counts.append(len(cosets))
            j += 1
        # number of cyclic factors of order >= p^j is log_p(n_j / n_{j-1})
        ge = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            e = 0
            while ratio > 1:
                ratio //= p
                e += 1
            ge.append(e)
        for j in range(len(ge)):
            exactly = ge[j] - (ge[j + 1] if j + 1 < len(ge) else 0)
            invariants.extend([p ** (j + 1)] * exactly)
    return sorted(invariants)
