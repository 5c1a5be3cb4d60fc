"""Representations alpha (x) phi of realized groups on Q[H]^k.

Row-vector convention throughout: g acts on the right by
``v -> v * alpha(g) * x^phi(g)``, so ``alpha(gh) = alpha(g) alpha(h)``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (
    DecompositionError,
    HypothesisViolation,
    InvarianceViolation,
    MalformedInputError,
    ShapeError,
)
from .exact.laurent import LaurentPoly
from .exact.linalg import inverse as mat_inverse
from .exact.linalg import matrix_rank, row_space_basis, rref
from .exact.matrix import LAURENT, QQ, Matrix, infer_ring
from .groups.profiles import perm_matrix
from .groups.realized import RealizedElement
from .groups.splitting import decompose, splitting_subgroup


def _matmul(a, b):
    cols = list(zip(*b))
    out = []
    for row in a:
        nz = [(i, x) for i, x in enumerate(row) if x]
        line = []
        for c in cols:
            s = sum(x * c[i] for i, x in nz if c[i])
            if isinstance(s, Fraction) and s.denominator == 1:
                s = s.numerator
            line.append(s)
        out.append(tuple(line))
    return tuple(out)


def _identity(k):
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def _mat_power(m, n):
    if n < 0:
        m = mat_inverse(Matrix(m, ring=QQ)).data
        n = -n
    out = _identity(len(m))
    for _ in range(n):
        out = _matmul(out, m)
    return out


def _as_rational_matrix(m, k):
    if isinstance(m, Matrix):
        m = m.data
    m = tuple(tuple(x for x in row) for row in m)
    if len(m) != k or any(len(row) != k for row in m):
        raise ShapeError(f"expected a {k}x{k} matrix")
    return tuple(tuple(Matrix([[x]], ring=QQ).data[0][0] for x in row) for row in m)


class TensorRepresentation:
    """alpha: Gamma -> GL(k, Q) paired with phi = h-vector.

    ``alpha_fn`` maps a RealizedElement to a k x k rational matrix (tuple rows).
    """

    def __init__(self, group, k, alpha_fn, label="", check=True, induced=None):
        self.group = group
        self.k = k
        self.r = group.r
        self._alpha_fn = alpha_fn
        self._cache = {}
        self.label = label
        self.induced = induced
        if check:
            self.check_multiplicative()

    def alpha(self, g):
        m = self._cache.get(g)
        if m is None:
            m = self._alpha_fn(g)
            if len(self._cache) < 100000:
                self._cache[g] = m
        return m

    def phi(self, g):
        return g.hvec

    def specialize(self, g):
        """alpha(g) * x^phi(g) as a matrix over the Laurent ring."""
        a = self.alpha(g)
        h = g.hvec
        ring = LAURENT(self.r)
        zero = LaurentPoly.zero(self.r)
        data = tuple(tuple(LaurentPoly.monomial(h, x) if x else zero for x in row) for row in a)
        return Matrix._raw(data, ring, self.k, self.k)

    def check_multiplicative(self):
        """alpha(gh) == alpha(g) alpha(h) on all pairs of generators and p-generators."""
        G = self.group
        gens = list(G.generators) + list(G.p_generators)
        gens += [g.inverse() for g in G.generators]
        for g in gens:
            a = self.alpha(g)
            if len(a) != self.k:
                raise ShapeError("representation matrix has the wrong size")
        for g in gens:
            for h in gens:
                if self.alpha(g * h) != _matmul(self.alpha(g), self.alpha(h)):
                    raise HypothesisViolation(
                        "representation is not multiplicative on generators", check="multiplicative")
        for q in G.kernel_elements:
            if any(self.phi(q)):
                raise HypothesisViolation("phi is nonzero on P", check="phi-kernel")
        return True

    def kernel_image_order(self):
        """Order of alpha(P), the finite group through which alpha restricted to P factors."""
        return len({self.alpha(q) for q in self.group.kernel_elements})

    def __repr__(self):
        return f"TensorRepresentation(k={self.k}, r={self.r}{', ' + self.label if self.label else ''})"


def tautological(G):
    """alpha(g) = the realizing matrix of g."""
    return TensorRepresentation(G, G.k, lambda g: g.mat, label="tautological", check=False)


def trivial_rep(G, k=1):
    ident = _identity(k)
    return TensorRepresentation(G, k, lambda g: ident, label="trivial", check=False)


def from_generator_images(G, images, cert=None):
    """Representation determined by matrices on named generators.

    Arbitrary elements are evaluated through the normal form
    ``g = psi(f) * q * t_j`` of a splitting certificate, then the result is
    checked to be multiplicative.
    """
    missing = [n for n in G.names if n not in images]
    if missing:
        raise MalformedInputError(f"no image given for generators {missing}")
    k = len(next(iter(images.values()))) if images else 1
    mats = {n: _as_rational_matrix(images[n], k) for n in G.names}
    inv = {n: _mat_power(m, -1) for n, m in mats.items()}
    cert = cert or splitting_subgroup(G)

    def word_value(word):
        out = _identity(k)
        for n, e in word:
            step = mats[n] if e > 0 else inv[n]
            for _ in range(abs(e)):
                out = _matmul(out, step)
        return out

    sections = [word_value(w) for w in cert.section_words]
    kernel_vals = [word_value(w) for w in G.kernel_words]
    cosets = [word_value(w) for w in cert.coset_words]

    def alpha(g):
        c, qi, j = decompose(G, cert, g)
        out = _identity(k)
        for s, ci in zip(sections, c):
            if ci:
                out = _matmul(out, _mat_power(s, ci))
        return _matmul(_matmul(out, kernel_vals[qi]), cosets[j])

    rep = TensorRepresentation(G, k, alpha, label="generator images", check=False)
    for n in G.names:
        if rep.alpha(G.element(n)) != mats[n]:
            raise HypothesisViolation(
                f"generator images do not define a homomorphism (mismatch at {n})",
                check="multiplicative")
    # P must map homomorphically and equivariantly
    T = G.kernel_table()
    for a in range(T.order):
        for b in range(T.order):
            if kernel_vals[T.mul(a, b)] != _matmul(kernel_vals[a], kernel_vals[b]):
                raise HypothesisViolation("images are not multiplicative on P", check="multiplicative")
    rep.check_multiplicative()
    return rep


def regular_rep(P):
    """Right regular representation: list of permutation matrices indexed by P."""
    return [Matrix(perm_matrix(tuple(P.mul(x, q) for x in range(P.order))), ring=QQ)
            for q in range(P.order)]


class InducedRepData:
    def __init__(self, cert, base_dim, cosets):
        self.cert = cert
        self.base_dim = base_dim
        self.cosets = tuple(cosets)

    @property
    def index(self):
        return len(self.cosets)

    @property
    def dim(self):
        return self.base_dim * self.index


def regular_base(G, cert):
    """Base representation of psi(F x P): psi(f) q -> R(q) (regular rep of P)."""
    R = [m.data for m in regular_rep(G.kernel_table())]

    def base(b):
        c, qi, j = decompose(G, cert, b)
        if j != 0:
            raise DecompositionError("element is not in psi(F x P)")
        return R[qi]

    return base, G.order_P


def restricted_base(rep):
    """Restriction of a representation of Gamma to psi(F x P)."""
    return rep.alpha, rep.k


def induce_rep(G, base, base_dim, cert=None):
    """Induce from psi(F x P) to Gamma along right cosets.

    For ``t_i g = b t_j`` block ``(i, j)`` of the induced alpha(g) is ``base(b)``;
    phi is inherited from Gamma.
    """
    cert = cert or splitting_subgroup(G)
    reps = cert.coset_reps
    invs = cert.coset_inverses()
    l = len(reps)
    n = base_dim * l

    def alpha(g):
        rows = [[0] * n for _ in range(n)]
        for i, t in enumerate(reps):
            _, _, j = decompose(G, cert, t * g)
            b = t * g * invs[j]
            blk = base(b)
            for a in range(base_dim):
                row = rows[i * base_dim + a]
                src = blk[a]
                for c in range(base_dim):
                    row[j * base_dim + c] = src[c]
        return tuple(tuple(r) for r in rows)

    rep = TensorRepresentation(G, n, alpha, label=f"induced from index {l}", check=False,
                               induced=InducedRepData(cert, base_dim, reps))
    rep.check_multiplicative()
    return rep


# --- the keystep isomorphism -------------------------------------------------------------

def _vec_times(vec, mat, mono=None):
    """Row vector of Laurent polys times a rational matrix, optionally times a monomial."""
    k = len(mat)
    r = vec[0].nvars if vec else 0
    out = []
    for c in range(k):
        s = LaurentPoly.zero(r)
        for i in range(k):
            a = mat[i][c]
            if a and vec[i]:
                s = s + vec[i] * a
        if mono is not None and s:
            s = s.shift(mono)
        out.append(s)
    return tuple(out)


def _add_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


def theta(cert, rep, elem):
    """theta(sum_i v_i (x) t_i) = sum_i v_i alpha(t_i) x^phi(t_i) in Q[H]^k."""
    r, k = rep.r, rep.k
    out = tuple(LaurentPoly.zero(r) for _ in range(k))
    for v, t in zip(elem, cert.coset_reps):
        out = _add_vec(out, _vec_times(v, rep.alpha(t), t.hvec))
    return out


def rho(cert, rep, y):
    """Inverse of theta: split monomials by coset of F, then undo alpha(t_i)."""
    r, k = rep.r, rep.k
    l = len(cert.coset_reps)
    parts = [[dict() for _ in range(k)] for _ in range(l)]
    vecs = cert.coset_vectors
    for a, poly in enumerate(y):
        for exps, c in poly.terms.items():
            for i, v in enumerate(vecs):
                d = tuple(e - x for e, x in zip(exps, v))
                if cert.coords(d) is not None:
                    parts[i][a][d] = c
                    break
            else:
                raise DecompositionError(f"exponent {exps} lies in no coset of F")
    out = []
    for i, t in enumerate(cert.coset_reps):
        b = tuple(LaurentPoly(parts[i][a], r) for a in range(k))
        out.append(_vec_times(b, _mat_power(rep.alpha(t), -1)))
    return tuple(out)


def act_domain(G, cert, rep, elem, g):
    """Right action of g on sum_i v_i (x) t_i via t_i g = b t_j."""
    r, k = rep.r, rep.k
    l = len(cert.coset_reps)
    out = [tuple(LaurentPoly.zero(r) for _ in range(k)) for _ in range(l)]
    invs = cert.coset_inverses()
    for v, t in zip(elem, cert.coset_reps):
        _, _, j = decompose(G, cert, t * g)
        b = t * g * invs[j]
        out[j] = _add_vec(out[j], _vec_times(v, rep.alpha(b), b.hvec))
    return tuple(out)


def act_target(rep, y, g):
    return _vec_times(y, rep.alpha(g), g.hvec)


def _random_poly(rng, r, lattice, terms=3, span=2):
    p = {}
    for _ in range(rng.randint(0, terms)):
        coeffs = [rng.randint(-span, span) for _ in lattice]
        exps = [0] * r
        for c, v in zip(coeffs, lattice):
            for i, x in enumerate(v):
                exps[i] += c * x
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if c:
            p[tuple(exps)] = p.get(tuple(exps), 0) + c
    return LaurentPoly({e: c for e, c in p.items() if c}, r)


def theta_rho_roundtrip(cert, rep, samples, seed=0, vectors_per_sample=1):
    """Randomized check that theta and rho are inverse right-module maps.

    For each sample element g: a random y in Q[H]^k and a random domain element
    z must satisfy theta(rho(y)) = y, rho(theta(z)) = z and
    theta(z g) = theta(z) g.
    """
    return roundtrip_report(cert, rep, samples, seed, vectors_per_sample)["ok"]


def roundtrip_report(cert, rep, samples, seed=0, vectors_per_sample=1):
    G = rep.group
    rng = random.Random(seed)
    r, k = rep.r, rep.k
    H_basis = cert.image_basis or ()
    counts = {"theta_rho": 0, "rho_theta": 0, "module": 0, "trials": 0}
    for g in samples:
        for _ in range(vectors_per_sample):
            counts["trials"] += 1
            y = tuple(_random_poly(rng, r, H_basis) for _ in range(k))
            if theta(cert, rep, rho(cert, rep, y)) == y:
                counts["theta_rho"] += 1
            z = tuple(tuple(_random_poly(rng, r, cert.F_basis) for _ in range(k))
                      for _ in cert.coset_reps)
            if rho(cert, rep, theta(cert, rep, z)) == z:
                counts["rho_theta"] += 1
            if theta(cert, rep, act_domain(G, cert, rep, z, g)) == act_target(rep, theta(cert, rep, z), g):
                counts["module"] += 1
    n = counts["trials"]
    counts["ok"] = counts["theta_rho"] == n and counts["rho_theta"] == n and counts["module"] == n
    return counts


# --- Maschke ---------------------------------------------------------------------------

def block_regular_action(P, n, ring):
    """rho(q) on Q[P]^n: block diagonal right regular permutation matrices."""
    out = []
    size = P.order
    for q in range(size):
        perm = [P.mul(x, q) for x in range(size)]
        rows = []
        for blk in range(n):
            for x in range(size):
                row = [ring.zero()] * (n * size)
                row[blk * size + perm[x]] = ring.one()
                rows.append(row)
        out.append(Matrix(rows, ring=ring, shape=(n * size, n * size)))
    return out


def maschke_complement(basis, P, n, ring=None):
    """P-invariant complement of the span of ``basis`` in Q[P]^n.

    Averages the coordinate projection onto the span over P. Vectors are row
    tuples of field scalars; returns a list of row tuples.
    """
    N = n * P.order
    if ring is None:
        ring = infer_ring(x for v in basis for x in v) if basis else QQ
    if ring.kind == "LAURENT":
        from .exact.matrix import FRAC
        ring = FRAC(ring.param) if ring.param else QQ
    for v in basis:
        if len(v) != N:
            raise ShapeError(f"vector of length {len(v)} in a module of dimension {N}")
    action = block_regular_action(P, n, ring)
    ident = Matrix.identity(N, ring)
    if not basis:
        return [ident.row(i) for i in range(N)]
    V = Matrix(basis, ring=ring, shape=(len(basis), N))
    R, piv = rref(V)
    d = len(piv)
    Vb = R.submatrix(range(d), range(N))
    gens = P.generators()
    for q in gens:
        moved = Vb @ action[q]
        if matrix_rank(Vb.vstack(moved)) != d:
            raise InvarianceViolation("input span is not invariant under P")
    E = Matrix([[ring.one() if piv[i] == c else ring.zero() for i in range(d)] for c in range(N)],
               ring=ring, shape=(N, d))
    proj = E @ Vb
    total = Matrix.zeros(N, N, ring)
    for q in range(P.order):
        total = total + action[P.inverse(q)] @ proj @ action[q]
    avg = total.scale(ring.coerce(Fraction(1, P.order)))
    comp = ident - avg
    W = row_space_basis(comp)
    if W:
        Wm = Matrix(W, ring=ring, shape=(len(W), N))
        for q in gens:
            if matrix_rank(Wm.vstack(Wm @ action[q])) != len(W):
                raise InvarianceViolation("averaged complement is not invariant")
        if matrix_rank(Vb.vstack(Wm)) != N:
            raise InvarianceViolation("span and complement do not give a direct sum")
    elif d != N:
        raise InvarianceViolation("complement is empty but the span is proper")
    return W
