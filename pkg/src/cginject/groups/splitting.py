"""Splitting a realized Gamma virtually as F x P, and coset machinery.

Given Gamma with finite normal P = ker(hvec) and free abelian image H, we find a
finite-index sublattice F of H together with a section F -> Gamma whose image
commutes with P. Then F x P embeds in Gamma with finite index and right coset
representatives give a free basis of Z[Gamma] over Z[F x P].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from ..errors import (
    CertificateInvalidError,
    DecompositionError,
    MalformedInputError,
    SearchExhaustedError,
)
from ..exact.lattice import express, hnf_basis, hnf_with_transform, sublattice_index
from ..exact.primefield import is_prime
from .finite import automorphism_group, compose, invert_perm, lower_central_series, quotient_invariants

COSET_SEARCH_LIMIT = 20000


def _combine(vectors, coeffs, dim):
    out = [0] * dim
    for v, c in zip(vectors, coeffs):
        if c:
            for i, x in enumerate(v):
                out[i] += c * x
    return tuple(out)


def lattice_coords(basis, v):
    """Integer coordinates of ``v`` in an arbitrary lattice basis, or ``None``."""
    if not basis:
        return () if not any(v) else None
    h, u = hnf_with_transform(basis, len(v))
    rank = sum(1 for row in h if any(row))
    c = express([row for row in h[:rank]], v)
    if c is None:
        return None
    return tuple(sum(c[i] * u[i][j] for i in range(rank)) for j in range(len(basis)))


def _word_power(word, n):
    if n == 0:
        return ()
    if n > 0:
        return word * n
    inv = tuple((a, -e) for a, e in reversed(word))
    return inv * (-n)


class SplittingCertificate:
    """Sublattice F with section, index and right coset representatives.

    ``section[i]`` lies over ``F_basis[i]``; sections commute with each other and
    with P. ``coset_reps[0]`` is the identity.
    """

    def __init__(self, F_basis, section, section_words, index, coset_reps, coset_words,
                 image_basis, method, aut_order=None):
        self.F_basis = tuple(tuple(v) for v in F_basis)
        self.section = tuple(section)
        self.section_words = tuple(section_words)
        self.index = index
        self.coset_reps = tuple(coset_reps)
        self.coset_words = tuple(coset_words)
        self.image_basis = tuple(tuple(v) for v in image_basis)
        self.method = method
        self.aut_order = aut_order
        self._coset_inverses = None
        self._psi_cache = {}
        self._hnf = hnf_with_transform(self.F_basis, len(self.image_basis[0]) if self.image_basis else 0) \
            if self.F_basis else None

    @property
    def coset_vectors(self):
        return tuple(t.hvec for t in self.coset_reps)

    def coords(self, v):
        """Coordinates of ``v`` in ``F_basis`` or ``None`` when ``v`` is not in F."""
        if not self.F_basis:
            return () if not any(v) else None
        h, u = self._hnf
        rank = len(self.F_basis)
        c = express([row for row in h[:rank]], v)
        if c is None:
            return None
        return tuple(sum(c[i] * u[i][j] for i in range(rank)) for j in range(rank))

    def psi(self, coords):
        """Section image of the F element with the given coordinates."""
        coords = tuple(coords)
        out = self._psi_cache.get(coords)
        if out is None:
            out = None
            for s, c in zip(self.section, coords):
                term = s ** c
                out = term if out is None else out * term
            if out is None:
                raise MalformedInputError("psi of the trivial lattice needs a group identity")
            self._psi_cache[coords] = out
        return out

    def coset_inverses(self):
        if self._coset_inverses is None:
            self._coset_inverses = tuple(t.inverse() for t in self.coset_reps)
        return self._coset_inverses

    def as_dict(self):
        return {
            "method": self.method,
            "image_basis": [list(v) for v in self.image_basis],
            "F_basis": [list(v) for v in self.F_basis],
            "index": self.index,
            "coset_vectors": [list(v) for v in self.coset_vectors],
            "aut_order": self.aut_order,
        }

    def __repr__(self):
        return f"SplittingCertificate(F={list(map(list, self.F_basis))}, index={self.index})"


def _lifts(G):
    """Hermite basis of phi(Gamma) with lifts (element, word) for each basis vector."""
    hs = [g.hvec for g in G.generators]
    H, U = hnf_with_transform(hs, G.r)
    basis, lifts = [], []
    for row, urow in zip(H, U):
        if not any(row):
            continue
        word = ()
        for name, c in zip(G.generator_names, urow):
            if c:
                word += ((name, c),)
        basis.append(tuple(row))
        lifts.append((G.evaluate_word(word), word))
    return basis, lifts


def _inner_perms(G):
    inner = {}
    for i, q in enumerate(G.kernel_elements):
        inner.setdefault(G.conjugation_perm(q), i)
    return inner


def _perm_of_word(G, perms, coeffs):
    n = G.order_P
    out = tuple(range(n))
    for p, c in zip(perms, coeffs):
        step = p if c >= 0 else invert_perm(p)
        for _ in range(abs(c)):
            out = compose(out, step)
    return out


def _kill_inner(G, g, word, inner):
    """Multiply ``g`` by an element of P so the product centralizes P."""
    target = invert_perm(G.conjugation_perm(g))
    qi = inner.get(target)
    if qi is None:
        raise CertificateInvalidError("conjugation action is not inner on this element")
    return g * G.kernel_elements[qi], word + G.kernel_words[qi]


def splitting_subgroup(G):
    """Find F, a commuting section and coset representatives (verified)."""
    basis, lifts = _lifts(G)
    s = len(basis)
    if s == 0:
        cert = SplittingCertificate((), (), (), 1, (G.identity(),), ((),), (), "lemma")
        verify_certificate(G, cert)
        return cert
    inner = _inner_perms(G)
    perms = [G.conjugation_perm(g) for g, _ in lifts]
    ident = tuple(range(G.order_P))

    # order of each lift's action modulo inner automorphisms
    orders = []
    for p in perms:
        o, x = 1, p
        while x not in inner:
            x = compose(x, p)
            o += 1
        orders.append(o)
    relations = [tuple(o if i == j else 0 for j in range(s)) for i, o in enumerate(orders)]
    for c in iproduct(*(range(o) for o in orders)):
        if any(c) and _perm_of_word(G, perms, c) in inner:
            relations.append(c)
    kernel = hnf_basis(relations, s)

    F_basis, section, words = [], [], []
    for c in kernel:
        word = ()
        g = G.identity()
        for (lift, lw), ci in zip(lifts, c):
            if ci:
                g = g * lift ** ci
                word += _word_power(lw, ci)
        g, word = _kill_inner(G, g, word, inner)
        F_basis.append(_combine(basis, c, G.r))
        section.append(g)
        words.append(word)

    if not all(a.commutes_with(b) for a in section for b in section):
        # commutators lie in Z(P); powering by its exponent kills them
        e = G.kernel_table().exponent(G.kernel_table().center())
        section = [x ** e for x in section]
        words = [_word_power(w, e) for w in words]
        F_basis = [tuple(e * x for x in v) for v in F_basis]

    index = sublattice_index([lattice_coords(basis, v) for v in F_basis],
                             [tuple(int(i == j) for j in range(s)) for i in range(s)])
    reps, rep_words = _coset_search(G, F_basis, index)
    cert = SplittingCertificate(F_basis, section, words, index, reps, rep_words, basis, "lemma")
    verify_certificate(G, cert)
    return cert


def remark_certificate(G):
    """Rank-one fallback: F = l * H with l = |Aut(P)|, section = lift^l."""
    basis, lifts = _lifts(G)
    if len(basis) != 1:
        raise MalformedInputError("the |Aut(P)| fallback needs an image of rank one")
    l = len(automorphism_group(G.kernel_table()))
    lift, lw = lifts[0]
    F_basis = [tuple(l * x for x in basis[0])]
    section = [lift ** l]
    words = [_word_power(lw, l)]
    reps, rep_words = _coset_search(G, F_basis, l)
    cert = SplittingCertificate(F_basis, section, words, l, reps, rep_words, basis, "remark",
                                aut_order=l)
    verify_certificate(G, cert)
    return cert


def _coset_search(G, F_basis, index):
    """Breadth-first search over generator words for one element per coset of F."""
    steps = []
    for g, n in zip(G.generators, G.generator_names):
        if any(g.hvec):
            steps.append((g, ((n, 1),)))
            steps.append((G.inverse_of(n), ((n, -1),)))
    reps = [G.identity()]
    words = [()]
    seen = {G.identity()}
    frontier = [(G.identity(), ())]
    visited = 1

    def new_coset(v):
        return all(lattice_coords(F_basis, tuple(a - b for a, b in zip(v, t.hvec))) is None
                   for t in reps)

    while len(reps) < index and frontier:
        nxt = []
        for x, w in frontier:
            for st, sw in steps:
                y = x * st
                if y in seen:
                    continue
                seen.add(y)
                visited += 1
                if visited > COSET_SEARCH_LIMIT:
                    raise SearchExhaustedError(
                        f"coset search visited {COSET_SEARCH_LIMIT} elements without finding "
                        f"{index} cosets")
                if new_coset(y.hvec):
                    reps.append(y)
                    words.append(w + sw)
                    if len(reps) == index:
                        return reps, words
                nxt.append((y, w + sw))
        frontier = nxt
    if len(reps) < index:
        raise SearchExhaustedError(f"found {len(reps)} of {index} cosets")
    return reps, words


def coset_representatives(G, cert):
    """Right coset representatives t_0 = e, ..., t_{l-1} of psi(F x P) in Gamma."""
    return list(cert.coset_reps)


def decompose(G, cert, g):
    """Write ``g = psi(f) * q * t_j``; returns ``(f_coords, q_index, j)``."""
    for j, t in enumerate(cert.coset_reps):
        d = tuple(a - b for a, b in zip(g.hvec, t.hvec))
        c = cert.coords(d)
        if c is not None:
            break
    else:
        raise DecompositionError("element lies in no listed coset")
    b = g * cert.coset_inverses()[j]
    q = (cert.psi(c).inverse() * b) if c else b
    qi = G.kernel_index.get(q)
    if qi is None:
        raise DecompositionError("element does not decompose over psi(F x P)")
    return c, qi, j


def verify_certificate(G, cert):
    """Check every certificate invariant; raises CertificateInvalidError."""
    for v, s in zip(cert.F_basis, cert.section):
        if s.hvec != tuple(v):
            raise CertificateInvalidError(f"section over {list(v)} has h-vector {list(s.hvec)}")
        for q in G.kernel_elements:
            if not s.commutes_with(q):
                raise CertificateInvalidError(f"section over {list(v)} does not centralize P")
    for a in cert.section:
        for b in cert.section:
            if not a.commutes_with(b):
                raise CertificateInvalidError("section images do not commute")
    s = len(cert.image_basis)
    if len(cert.F_basis) != s:
        raise CertificateInvalidError("F does not have full rank in the image lattice")
    coords = [lattice_coords(cert.image_basis, v) for v in cert.F_basis]
    if any(c is None for c in coords):
        raise CertificateInvalidError("F is not contained in the image lattice")
    if s:
        idx = sublattice_index(coords, [tuple(int(i == j) for j in range(s)) for i in range(s)])
    else:
        idx = 1
    if idx != cert.index:
        raise CertificateInvalidError(f"index {cert.index} but [H : F] = {idx}")
    if len(cert.coset_reps) != cert.index or not cert.coset_reps[0].is_identity():
        raise CertificateInvalidError("coset representatives must start with e and number |H/F|")
    vecs = cert.coset_vectors
    for i in range(len(vecs)):
        for j in range(i):
            if cert.coords(tuple(a - b for a, b in zip(vecs[i], vecs[j]))) is not None:
                raise CertificateInvalidError("two coset representatives share a coset")
    # every product t_i * x with x a generator lands in a listed coset
    for t in cert.coset_reps:
        for x in G.generators + G.p_generators:
            try:
                decompose(G, cert, t * x)
            except DecompositionError as exc:
                raise CertificateInvalidError(str(exc)) from None
    # psi is injective on F x P: a box of F coordinates times P gives distinct elements
    if cert.section:
        seen = set()
        box = list(iproduct(*([(-1, 0, 1)] * len(cert.section))))
        for c in box:
            base = cert.psi(c)
            for q in G.kernel_elements:
                seen.add(base * q)
        if len(seen) != len(box) * G.order_P:
            raise CertificateInvalidError("psi(F x P) is not injective on sampled elements")
    return True


# --- normal series certificate -----------------------------------------------------------

@dataclass
class NormalSeries:
    """Gamma > P = P_1 > P_2 > ... > {e} with abelian p-power quotients below P."""

    prime: int
    free_rank: int
    orders: list = field(default_factory=list)
    quotients: list = field(default_factory=list)

    @property
    def length(self):
        return len(self.quotients)

    def as_dict(self):
        return {"prime": self.prime, "free_rank": self.free_rank,
                "orders": list(self.orders), "quotients": [list(q) for q in self.quotients]}

    def describe(self):
        parts = [f"Gamma / P = Z^{self.free_rank}"]
        for q in self.quotients[1:]:
            parts.append(" x ".join(f"Z/{n}" for n in q) if q else "1")
        return "; ".join(parts)


def d_zp_certificate(G, p):
    """Series witnessing that Gamma has no torsion coprime to p in its quotients."""
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    basis, _ = _lifts(G)
    P = G.kernel_table()
    if P.order == 1:
        return NormalSeries(p, len(basis), [1], [()])
    series = lower_central_series(P)
    if len(series[-1]) != 1:
        raise CertificateInvalidError("lower central series of P does not reach the identity")
    orders = [len(t) for t in series]
    quotients = [()]
    for big, small in zip(series, series[1:]):
        inv = quotient_invariants(P, big, small)
        for n in inv:
            m = n
            while m % p == 0:
                m //= p
            if m != 1:
                raise CertificateInvalidError(f"quotient has torsion of order {n} coprime to {p}")
        quotients.append(tuple(inv))
    return NormalSeries(p, len(basis), orders, quotients)
