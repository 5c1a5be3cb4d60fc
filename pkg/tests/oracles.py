"""Independent reference computations used only by the tests.

These avoid the package's own Fox calculus, splitting, induction and Smith
form code: Fox derivatives are recomputed letter by letter, group-ring
entries become monomial matrices in a coset model of Q[Gamma] over Q[t^+-1],
and invariant factors come from sympy.
"""

from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_form

T = sympy.symbols("t")


def expand(word):
    for name, e in word:
        for _ in range(abs(e)):
            yield name, 1 if e > 0 else -1


def fox(word, x):
    """List of (coefficient, prefix letters) for d word / d x, unreduced."""
    out = []
    prefix = []
    for name, s in expand(word):
        if s > 0:
            if name == x:
                out.append((1, list(prefix)))
            prefix.append((name, 1))
        else:
            prefix.append((name, -1))
            if name == x:
                out.append((-1, list(prefix)))
    return out


def alexander_polynomial(pres):
    """Determinant of the abelianized Fox matrix minus the meridian column (sympy)."""
    cols = [x for x in pres.generators if x != pres.meridian]
    rows = []
    for w in pres.relators:
        row = []
        for x in cols:
            s = 0
            for c, pre in fox(w, x):
                s += c * T ** sum(e for _, e in pre)
            row.append(s)
        rows.append(row)
    if not rows:
        return sympy.Integer(1)
    return sympy.factor(sympy.Matrix(rows).det())


def normalize_univariate(expr):
    """Monic polynomial with t-adic valuation 0 (units of Q[t^+-1] stripped)."""
    expr = sympy.together(sympy.expand(expr))
    num, _ = sympy.fraction(expr)
    poly = sympy.Poly(sympy.expand(num), T)
    if poly.is_zero:
        return poly
    while poly.eval(0) == 0:
        poly = sympy.Poly(sympy.cancel(poly.as_expr() / T), T)
    return poly.monic()


# --- coset model of Q[Gamma] ---------------------------------------------------------------

def enumerate_kernel(images, gens):
    """P = closure of the ratios x_i x_1^-1 under products and conjugation."""
    x1 = images[gens[0]]
    x1i = x1.inverse()
    ident = x1 * x1i
    seeds = [images[g] * x1i for g in gens[1:]]
    conj = [images[g] for g in gens] + [images[g].inverse() for g in gens]
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in seeds:
                for b in (a * s,) + tuple(c * (a * s) * c.inverse() for c in conj):
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
        frontier = nxt
    return sorted(elems, key=lambda e: (e.mat, e.hvec))


class CosetModel:
    """Q[Gamma] = sum over q in P of Q[tau^+-1] q, with right multiplication as matrices."""

    def __init__(self, images, gens):
        self.P = enumerate_kernel(images, gens)
        self.index = {q: i for i, q in enumerate(self.P)}
        self.tau = images[gens[0]]
        self.tau_inv = self.tau.inverse()

    def _tau_power(self, n):
        out = self.tau * self.tau_inv
        step = self.tau if n >= 0 else self.tau_inv
        for _ in range(abs(n)):
            out = out * step
        return out

    def right_mult(self, g):
        """Matrix (sympy) of v -> v g on the basis P; entries are t^phi(g)."""
        n = len(self.P)
        h = g.hvec[0]
        back = self._tau_power(-h)
        m = sympy.zeros(n, n)
        for i, q in enumerate(self.P):
            q2 = back * q * g
            m[i, self.index[q2]] += T ** h
        return m

    def element_matrix(self, terms):
        n = len(self.P)
        m = sympy.zeros(n, n)
        for g, c in terms:
            m += sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * self.right_mult(g)
        return m


def word_value(images, word):
    out = None
    for name, s in expand(word):
        g = images[name] if s > 0 else images[name].inverse()
        out = g if out is None else out * g
    return out


def cover_complex(pres, images):
    """Boundary matrices (sympy, over Q[t^+-1]) of the Gamma-cover in the coset model."""
    gens = list(pres.generators)
    model = CosetModel(images, gens)
    ident = model.tau * model.tau_inv
    n = len(model.P)
    d1 = sympy.zeros(len(gens) * n, n)
    for j, x in enumerate(gens):
        d1[j * n:(j + 1) * n, :] = model.element_matrix([(images[x], 1), (ident, -1)])
    d2 = sympy.zeros(len(pres.relators) * n, len(gens) * n)
    for i, w in enumerate(pres.relators):
        for j, x in enumerate(gens):
            terms = [(word_value(images, pre) if pre else ident, c) for c, pre in fox(w, x)]
            d2[i * n:(i + 1) * n, j * n:(j + 1) * n] = model.element_matrix(terms)
    return model, [d1, d2]


def _polynomial_matrix(m):
    """Multiply by a power of t so every entry is a polynomial (a unit over Q[t^+-1])."""
    low = 0
    for x in m:
        x = sympy.expand(x)
        for term in sympy.Add.make_args(x):
            if term != 0:
                low = min(low, sympy.degree(term * T ** 100, T) - 100)
    return (m * T ** (-low)).applyfunc(sympy.expand)


def torsion_dim(m):
    """Sum of degrees of nonzero invariant factors over Q[t^+-1], plus the rank."""
    if m.rows == 0 or m.cols == 0:
        return 0, 0
    pm = _polynomial_matrix(m)
    snf = smith_normal_form(pm, domain=sympy.QQ[T])
    dim = 0
    rank = 0
    for i in range(min(snf.rows, snf.cols)):
        d = snf[i, i]
        if d != 0:
            rank += 1
            dim += normalize_univariate(d).degree()
    return dim, rank


def cover_homology_dims(pres, images):
    """dim_Q H_i of the P-cover of the infinite cyclic cover, via the coset model."""
    model, (d1, d2) = cover_complex(pres, images)
    n = len(model.P)
    ranks_c = [n, len(pres.generators) * n, len(pres.relators) * n]
    t1, r1 = torsion_dim(d1)
    t2, r2 = torsion_dim(d2)
    free = [ranks_c[0] - r1, ranks_c[1] - r1 - r2, ranks_c[2] - r2]
    if any(free):
        return None
    return [t1, t2, 0]
