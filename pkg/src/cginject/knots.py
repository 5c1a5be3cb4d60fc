"""Knot and link groups: presentations, Fox calculus, twisted complexes.

Presentation grammar (sections separated by ``/`` or newlines)::

    gens: x1 x2 x3 / rels: x1 x2 x1^-1 x3^-1, x2 x3 x2^-1 x1^-1 / meridian: x1

An optional ``components: x1 x2, y1 y2`` section assigns generators to link
components; the abelianization then sends a generator to the basis vector of
its component. Without it every generator maps to 1 in Z.
"""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass, field

from .complexes import (
    FreeChainComplex,
    chain_contraction_mod_p,
    homology_dims,
    prop41_pipeline,
)
from .errors import (
    HypothesisViolation,
    MalformedInputError,
    NotAcyclicError,
    PresentationSyntaxError,
    RelatorViolation,
    TheoremFalsification,
)
from .exact.snf import torsion_dimension
from .groups.finite import automorphism_group
from .groups.realized import DEFAULT_CAP, RealizedElement, build_realized_group
from .groups.splitting import splitting_subgroup
from .modmaps import GroupRingElement, GroupRingMatrix, is_prime_power, specialize_map
from .reps import induce_rep, regular_base, tautological
from .words import format_word, free_reduce, letters

_HEADER = re.compile(r"\b(gens|rels|meridian|components)\s*:")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_LETTER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class WirtingerPresentation:
    generators: tuple
    relators: tuple
    meridian: str
    components: tuple = None

    @property
    def r(self):
        return len(self.components) if self.components else 1

    def phi(self, name):
        if not self.components:
            return (1,)
        for i, comp in enumerate(self.components):
            if name in comp:
                return tuple(int(i == j) for j in range(len(self.components)))
        raise MalformedInputError(f"generator {name} belongs to no component")

    def exponent_vector(self, word):
        out = [0] * self.r
        for n, e in word:
            for i, x in enumerate(self.phi(n)):
                out[i] += e * x
        return tuple(out)

    def text(self):
        parts = ["gens: " + " ".join(self.generators),
                 "rels: " + ", ".join(format_word(w) for w in self.relators),
                 "meridian: " + self.meridian]
        if self.components:
            parts.append("components: " + ", ".join(" ".join(c) for c in self.components))
        return " / ".join(parts)


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokens(text, start, end):
    for m in re.finditer(r"[^\s/]+", text[start:end]):
        yield m.group(0), start + m.start()


def parse_presentation(text):
    """Parse and validate a presentation; errors carry line and column."""
    headers = list(_HEADER.finditer(text))
    first = headers[0].start() if headers else len(text)
    stray = text[:first].strip()
    if stray or not headers:
        off = len(text[:first]) - len(text[:first].lstrip()) if stray else 0
        line, col = _position(text, off)
        raise PresentationSyntaxError("expected a section header such as 'gens:'", line, col)
    sections = {}
    for i, m in enumerate(headers):
        end = headers[i + 1].start() if i + 1 < len(headers) else len(text)
        if m.group(1) in sections:
            line, col = _position(text, m.start())
            raise PresentationSyntaxError(f"duplicate section {m.group(1)!r}", line, col)
        sections[m.group(1)] = (m.end(), end)
    for need in ("gens", "rels", "meridian"):
        if need not in sections:
            line, col = _position(text, len(text))
            raise PresentationSyntaxError(f"missing section {need!r}", line, col)

    gens = []
    for tok, off in _tokens(text, *sections["gens"]):
        if not _NAME.match(tok):
            raise PresentationSyntaxError(f"bad generator name {tok!r}", *_position(text, off))
        if tok in gens:
            raise PresentationSyntaxError(f"duplicate generator {tok!r}", *_position(text, off))
        gens.append(tok)
    if not gens:
        raise PresentationSyntaxError("no generators", *_position(text, sections["gens"][0]))

    relators = []
    start, end = sections["rels"]
    body = text[start:end]
    pos = 0
    for chunk in body.split(","):
        cstart = start + pos
        pos += len(chunk) + 1
        word = []
        for tok, off in _tokens(text, cstart, cstart + len(chunk)):
            m = _LETTER.match(tok)
            if not m:
                raise PresentationSyntaxError(f"bad letter {tok!r}", *_position(text, off))
            if m.group(1) not in gens:
                raise PresentationSyntaxError(f"unknown generator {m.group(1)!r}",
                                              *_position(text, off))
            e = int(m.group(2)) if m.group(2) is not None else 1
            if e:
                word.append((m.group(1), e))
        if word:
            relators.append(tuple(word))
        elif chunk.strip(" \t\r\n/"):
            raise PresentationSyntaxError("empty relator", *_position(text, cstart))

    mer = list(_tokens(text, *sections["meridian"]))
    if len(mer) != 1:
        raise PresentationSyntaxError("meridian section needs exactly one generator",
                                      *_position(text, sections["meridian"][0]))
    meridian, off = mer[0]
    if meridian not in gens:
        raise PresentationSyntaxError(f"meridian {meridian!r} is not a generator",
                                      *_position(text, off))

    components = None
    if "components" in sections:
        s, e = sections["components"]
        components = []
        for chunk in text[s:e].split(","):
            comp = tuple(chunk.replace("/", " ").split())
            if comp:
                components.append(comp)
        flat = [g for c in components for g in c]
        if sorted(flat) != sorted(gens):
            raise PresentationSyntaxError("components must partition the generators",
                                          *_position(text, s))
        components = tuple(components)

    pres = WirtingerPresentation(tuple(gens), tuple(relators), meridian, components)
    for w in pres.relators:
        if any(pres.exponent_vector(w)):
            raise MalformedInputError(
                f"relator {format_word(w)} has nonzero exponent sum; abelianization check fails")
    return pres


# --- Fox calculus over the free group ---------------------------------------------------

def free_product(u, v):
    return free_reduce(tuple(letters(u)) + tuple(letters(v)))


def fox_derivative(word, x):
    """Free derivative d word / d x as ``{reduced word: integer coefficient}``.

    Letters are ``(name, +-1)``; d x / d x = 1 and d x^-1 / d x = -x^-1.
    """
    out = {}
    prefix = ()
    for n, s in letters(word):
        if s > 0:
            if n == x:
                key = free_reduce(prefix)
                out[key] = out.get(key, 0) + 1
            prefix = prefix + ((n, 1),)
        else:
            prefix = prefix + ((n, -1),)
            if n == x:
                key = free_reduce(prefix)
                out[key] = out.get(key, 0) - 1
    return {w: c for w, c in out.items() if c}


def free_ring_mul(a, b):
    out = {}
    for u, c in a.items():
        for v, d in b.items():
            w = free_product(u, v)
            out[w] = out.get(w, 0) + c * d
    return {w: c for w, c in out.items() if c}


def free_ring_add(a, b):
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def push_forward(elem, G):
    """Image of a free group ring element in Z[Gamma]."""
    out = GroupRingElement()
    for w, c in elem.items():
        out = out + GroupRingElement.of(G.evaluate_word(w), c, w)
    return out


# --- representations -----------------------------------------------------------------------

def check_relators(pres, images):
    for w in pres.relators:
        g = None
        for n, e in w:
            x = images[n] ** e
            g = x if g is None else g * x
        if g is not None and not g.is_identity():
            raise RelatorViolation(format_word(w))


def verify_rep(pres, images, prime=None, cap=DEFAULT_CAP):
    """Check relators, then realize Gamma with P generated by meridian ratios.

    ``images`` maps generator names to RealizedElements. Returns the realized
    group and the tautological representation of the assignment.
    """
    missing = [n for n in pres.generators if n not in images]
    if missing:
        raise MalformedInputError(f"assignment misses generators {missing}")
    for n in pres.generators:
        if images[n].hvec != pres.phi(n):
            raise MalformedInputError(
                f"h-vector of {n} is {list(images[n].hvec)}, abelianization gives {list(pres.phi(n))}")
    check_relators(pres, images)
    comps = pres.components or (pres.generators,)
    pgens, pnames = [], []
    for comp in comps:
        base = images[comp[0]]
        binv = base.inverse()
        for n in comp[1:]:
            pgens.append(images[n] * binv)
            pnames.append(f"{n}_{comp[0]}")
    heads = [images[c[0]] for c in comps]
    for i in range(len(heads)):
        for j in range(i + 1, len(heads)):
            a, b = heads[i], heads[j]
            pgens.append(a * b * a.inverse() * b.inverse())
            pnames.append(f"c_{comps[i][0]}_{comps[j][0]}")
    G = build_realized_group([images[n] for n in pres.generators], pgens, prime=prime, cap=cap,
                             generator_names=pres.generators, p_names=pnames)
    return G, tautological(G)


def trivial_assignment(pres, k=1):
    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    return {n: RealizedElement(ident, pres.phi(n)) for n in pres.generators}


def dihedral_assignment(pres, colors, n):
    """x_i -> (A R(c_i), 1) on Q[Z/n]: A inverts, R translates."""
    out = {}
    for g, c in zip(pres.generators, colors):
        mat = tuple(tuple(int(j == (c - x) % n) for j in range(n)) for x in range(n))
        out[g] = RealizedElement(mat, pres.phi(g))
    return out


# --- complexes -------------------------------------------------------------------------------

def fox_jacobian(pres, G):
    return [[push_forward(fox_derivative(w, x), G) for x in pres.generators]
            for w in pres.relators]


def relative_complex(pres, G):
    """C_2 = Z[Gamma]^m -> C_1 = Z[Gamma]^(n-1) -> C_0 = 0 for the pair (Y, meridian)."""
    J = fox_jacobian(pres, G)
    keep = [j for j, x in enumerate(pres.generators) if x != pres.meridian]
    m, n1 = len(pres.relators), len(keep)
    d2 = GroupRingMatrix([[row[j] for j in keep] for row in J], m, n1)
    d1 = GroupRingMatrix.zeros(n1, 0)
    return FreeChainComplex([0, n1, m], [d1, d2], G.identity())


def absolute_complex(pres, G):
    """C_2 = Z[Gamma]^m -> C_1 = Z[Gamma]^n -> C_0 = Z[Gamma] with d_1 = (x_j - 1)."""
    J = fox_jacobian(pres, G)
    n, m = len(pres.generators), len(pres.relators)
    e = G.identity()
    d1 = GroupRingMatrix([[GroupRingElement.of(G.element(x), 1, ((x, 1),))
                           - GroupRingElement.of(e, 1, ())] for x in pres.generators], n, 1)
    d2 = GroupRingMatrix(J, m, n)
    return FreeChainComplex([1, n, m], [d1, d2], e)


def alexander_matrix(pres):
    """Untwisted relative boundary over Q[t^+-1] (or Q[H] for links)."""
    G, rep = verify_rep(pres, trivial_assignment(pres))
    C = relative_complex(pres, G)
    return specialize_map(C.d(2), rep)


# --- finiteness of cover homology ----------------------------------------------------------

@dataclass
class FinitenessReport:
    prime: int
    order_P: int
    index: int
    aut_order: int
    induced_dim: int
    fp_homology_circle: bool
    pipeline: dict = field(default_factory=dict)
    twisted_dims: list = field(default_factory=list)
    raw_dims: list = field(default_factory=list)
    dims: list = field(default_factory=list)
    finite: bool = False

    def as_dict(self):
        return asdict(self)


def cg_lemma4_run(pres, images, p, cap=DEFAULT_CAP):
    """Finite-dimensionality of H_*(X~; Q) for the P-cover X~ of the infinite cyclic cover.

    The induced representation Q[H]^(d l) (d = |P|, l = [Gamma : F x P]) realizes
    l copies of Q[Gamma] over Q[t^+-1]; Q-dimensions come from Smith forms of
    the absolute complex and are divided by l.
    """
    if pres.r != 1:
        raise MalformedInputError("the finiteness runner needs a knot (one component)")
    G, _ = verify_rep(pres, images, prime=p, cap=cap)
    rel = relative_complex(pres, G)
    try:
        chain_contraction_mod_p(rel, p)
    except NotAcyclicError:
        raise HypothesisViolation(
            f"H_*(Y; F_{p}) is not that of the meridian circle", check="fp-homology-circle") from None
    cert = splitting_subgroup(G)
    aut = len(automorphism_group(G.kernel_table()))
    base, d = regular_base(G, cert)
    rep = induce_rep(G, base, d, cert)
    prop = prop41_pipeline(rel, rep, p)
    C = absolute_complex(pres, G)
    twisted = homology_dims(C, rep)
    finite = all(x == 0 for x in twisted)
    raw = []
    if finite:
        for i in range(C.top + 1):
            nxt = C.d(i + 1)
            if nxt.rows == 0 or nxt.cols == 0:
                raw.append(0)
            else:
                raw.append(torsion_dimension(specialize_map(nxt, rep)))
    l = cert.index
    if any(x % l for x in raw):
        raise ArithmeticError(f"dimensions {raw} are not divisible by the index {l}")
    report = FinitenessReport(p, G.order_P, l, aut, rep.k, True, prop.as_dict(), twisted, raw,
                          [x // l for x in raw], finite)
    if not finite:
        raise TheoremFalsification(report)
    return report
