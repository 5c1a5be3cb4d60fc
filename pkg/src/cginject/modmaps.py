"""Maps of free left Z[Gamma]-modules and the injectivity checker.

A map f: Z[Gamma]^a -> Z[Gamma]^b is an a x b matrix M of group-ring elements
acting on row vectors, v -> v M, so "f then g" is ``M_f @ M_g``. Tensoring with
Q[H]^k replaces each entry sum c_g g by the k x k block sum c_g alpha(g) x^phi(g).
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import (
    HypothesisViolation,
    MalformedInputError,
    RetryBudgetExhausted,
    ShapeError,
    TheoremFalsification,
)
from .exact.laurent import LaurentPoly
from .exact.linalg import matrix_rank
from .exact.matrix import GF, LAURENT, QQ, Matrix
from .exact.primefield import is_prime


def _canon(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, (int, Fraction)):
        return c
    raise MalformedInputError(f"group ring coefficients must be rational, got {c!r}")


class GroupRingElement:
    """Finite formal sum of RealizedElements with rational coefficients.

    ``words`` optionally remembers a generator word for each element so the
    element can be serialized.
    """

    __slots__ = ("terms", "words")

    def __init__(self, terms=None, words=None):
        out = {}
        for g, c in (terms or {}).items():
            c = _canon(c)
            if c:
                out[g] = c
        self.terms = out
        self.words = dict(words or {})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def of(cls, g, coeff=1, word=None):
        return cls({g: coeff}, {g: word} if word is not None else None)

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self.terms.values())

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms.get(g, 0) + c
        words = dict(self.words)
        words.update(other.words)
        return GroupRingElement(terms, words)

    def __neg__(self):
        return GroupRingElement({g: -c for g, c in self.terms.items()}, self.words)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElement({g: c * other for g, c in self.terms.items()}, self.words)
        terms = {}
        words = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                gh = g * h
                terms[gh] = terms.get(gh, 0) + c * d
                if g in self.words and h in other.words:
                    words[gh] = self.words[g] + other.words[h]
        return GroupRingElement(terms, words)

    def scale(self, c):
        return self * c

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def augment(self):
        return _canon(sum(self.terms.values(), 0))

    def __repr__(self):
        return f"GroupRingElement({len(self.terms)} terms)"


class GroupRingMatrix:
    def __init__(self, entries, rows=None, cols=None):
        entries = [list(r) for r in entries]
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError(f"entries do not form a {rows}x{cols} array")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(e for e in r) for r in entries)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[GroupRingElement() for _ in range(cols)] for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n, e):
        """Identity over Z[Gamma]; ``e`` is the group identity element."""
        return cls([[GroupRingElement.of(e, 1, ()) if i == j else GroupRingElement()
                     for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_integer_matrix(cls, m, e):
        """Integer (or F_p representative) matrix times the identity element."""
        rows, cols = m.shape
        return cls([[GroupRingElement.of(e, int(m[i, j]), ()) if m[i, j] else GroupRingElement()
                     for j in range(cols)] for i in range(rows)], rows, cols)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} with {other.shape}")
        out = []
        for i in range(self.rows):
            line = []
            for j in range(other.cols):
                s = GroupRingElement()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        s = s + a * b
                line.append(s)
            out.append(line)
        return GroupRingMatrix(out, self.rows, other.cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeError("shape mismatch")
        return GroupRingMatrix([[a + b for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.entries, other.entries)],
                               self.rows, self.cols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ShapeError("shape mismatch")
        return GroupRingMatrix([[a - b for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.entries, other.entries)],
                               self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def is_zero(self):
        return not any(e for r in self.entries for e in r)

    def elements(self):
        seen = {}
        for r in self.entries:
            for e in r:
                for g in e.terms:
                    seen[g] = None
        return list(seen)

    def __repr__(self):
        return f"GroupRingMatrix({self.rows}x{self.cols})"


def augment(m):
    """Entrywise augmentation (sum of coefficients) over Q."""
    return Matrix([[e.augment() for e in r] for r in m.entries], ring=QQ, shape=m.shape)


def augment_mod_p(m, p):
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    data = []
    for r in m.entries:
        line = []
        for e in r:
            a = Fraction(e.augment())
            if a.denominator % p == 0:
                raise MalformedInputError("coefficient is not p-integral")
            line.append(a.numerator * pow(a.denominator, -1, p))
        data.append(line)
    return Matrix(data, ring=GF(p), shape=m.shape)


def specialize_element(e, rep):
    """k x k block sum c_g alpha(g) x^phi(g) as raw Laurent rows."""
    k, r = rep.k, rep.r
    acc = [[dict() for _ in range(k)] for _ in range(k)]
    for g, c in e.terms.items():
        a = rep.alpha(g)
        h = g.hvec
        for i in range(k):
            row = a[i]
            for j in range(k):
                x = row[j]
                if x:
                    d = acc[i][j]
                    d[h] = d.get(h, 0) + c * x
    return [[LaurentPoly({h: c for h, c in d.items() if c}, r) for d in row] for row in acc]


def specialize_map(m, rep):
    """(a k) x (b k) matrix over Q[H] for Id (x) f."""
    k = rep.k
    rows = [[None] * (m.cols * k) for _ in range(m.rows * k)]
    for i in range(m.rows):
        for j in range(m.cols):
            blk = specialize_element(m.entries[i][j], rep)
            for a in range(k):
                rows[i * k + a][j * k:(j + 1) * k] = blk[a]
    return Matrix._raw(tuple(tuple(r) for r in rows), LAURENT(rep.r), m.rows * k, m.cols * k)


def injective_mod_p(m, p):
    if m.rows == 0:
        return True
    return matrix_rank(augment_mod_p(m, p)) == m.rows


def injective_over_QH(m, rep, method="auto"):
    if m.rows == 0:
        return True
    return matrix_rank(specialize_map(m, rep), method) == m.rows * rep.k


def is_prime_power(n, p):
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


@dataclass
class Verdict:
    prime: int
    rows: int
    cols: int
    k: int
    order_P: int
    order_alpha_P: int
    p_group: bool
    injective_mod_p: bool
    hypothesis_holds: bool
    conclusion_holds: bool
    consistent: bool
    rank_mod_p: int
    rank_QH: int

    def as_dict(self):
        return asdict(self)


def check_main_theorem(m, rep, p, strict=True, method="auto"):
    """Evaluate hypothesis and conclusion of the injectivity theorem on one map.

    The hypothesis is that alpha restricted to P = ker(phi) factors through a
    p-group (its image alpha(P) has p-power order) and that the mod-p
    augmentation of ``m`` is injective. With ``strict`` a violation of the
    implication raises TheoremFalsification.
    """
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    n_alpha = rep.kernel_image_order()
    pg = is_prime_power(n_alpha, p)
    rank_p = matrix_rank(augment_mod_p(m, p)) if m.rows else 0
    inj_p = rank_p == m.rows
    rank_q = matrix_rank(specialize_map(m, rep), method) if m.rows else 0
    concl = rank_q == m.rows * rep.k
    hyp = pg and inj_p
    v = Verdict(p, m.rows, m.cols, rep.k, rep.group.order_P, n_alpha, pg, inj_p, hyp, concl,
                (not hyp) or concl, rank_p, rank_q)
    if strict and not v.consistent:
        raise TheoremFalsification(v)
    return v


def random_word(rng, names, max_len):
    n = rng.randint(0, max_len)
    return tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(n))


def random_map(G, a, b, support=3, coeff_bound=3, seed=0, p=None, max_len=3, retries=100):
    """Seeded random a x b group-ring matrix, resampled until injective mod p."""
    if a > b:
        raise MalformedInputError(f"a random {a}x{b} map cannot be injective (need a <= b)")
    if support < 1 or coeff_bound < 1:
        raise MalformedInputError("support and coefficient bound must be positive")
    p = p if p is not None else G.prime
    rng = random.Random(seed)
    names = list(G.names)
    for _ in range(retries):
        entries = []
        for _i in range(a):
            row = []
            for _j in range(b):
                e = GroupRingElement()
                for _t in range(rng.randint(0, support)):
                    w = random_word(rng, names, max_len)
                    c = rng.choice([x for x in range(-coeff_bound, coeff_bound + 1) if x])
                    e = e + GroupRingElement.of(G.evaluate_word(w), c, w)
                row.append(e)
            entries.append(row)
        m = GroupRingMatrix(entries, a, b)
        if p is None or injective_mod_p(m, p):
            return m
    raise RetryBudgetExhausted(f"no map injective mod {p} after {retries} draws")
