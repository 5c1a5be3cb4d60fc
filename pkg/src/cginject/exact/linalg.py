"""Rank, elimination and linear solving over exact rings.

Pivoting is deterministic everywhere: columns are scanned left to right and
the first row (top-down) with a nonzero entry in the column is the pivot.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import MalformedInputError, ShapeError, UnsupportedRingError
from .fracfield import FracElem
from .laurent import LaurentPoly
from .matrix import FRAC, QQ, Matrix, Ring

# large Mersenne prime used for evaluation certificates
EVAL_PRIME = (1 << 61) - 1
_EVAL_SEEDS = (1234577, 7654337, 99991)


def _field_of(m):
    if m.ring.kind == "LAURENT":
        return m.to_ring(FRAC(m.ring.param)) if m.ring.param else m.to_ring(QQ)
    return m


def _field_rows(m):
    if m.ring.kind == "QQ":
        return [[Fraction(x) for x in r] for r in m.data]
    return [list(r) for r in m.data]


# --- elimination over a field -------------------------------------------------

def _rank_mod_p(rows, p):
    a = [[int(x) % p for x in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        prow = a[rank]
        for i in range(rank + 1, nrows):
            f = a[i][c]
            if f:
                f = f * inv % p
                row = a[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(m):
    """Reduced row echelon form over a field: returns ``(R, pivot_columns)``."""
    m = _field_of(m)
    ring = m.ring
    if ring.kind == "GF":
        p = ring.param
        a = [[int(x) % p for x in r] for r in m.data]
        div = lambda x, y: x * pow(y, -1, p) % p
        sub = lambda x, y: (x - y) % p
        mul = lambda x, y: x * y % p
    else:
        a = _field_rows(m)
        div = lambda x, y: x / y
        sub = lambda x, y: x - y
        mul = lambda x, y: x * y
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        lead = a[r][c]
        a[r] = [div(x, lead) if x else x for x in a[r]]
        prow = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [sub(x, mul(f, y)) if y else x for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Matrix(a, ring=ring, shape=(nrows, ncols)), pivots


def naive_rank(m):
    """Rank by plain Gaussian elimination with field division."""
    m = _field_of(m)
    if m.ring.kind == "GF":
        return _rank_mod_p(m.data, m.ring.param)
    a = _field_rows(m)
    nrows, ncols = m.rows, m.cols
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        lead = prow[c]
        for i in range(rank + 1, nrows):
            if a[i][c]:
                f = a[i][c] / lead
                a[i] = [x - f * y if y else x for x, y in zip(a[i], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


# --- fraction-free elimination ---------------------------------------------------

def _exact_div(a, b):
    if isinstance(a, LaurentPoly):
        return a.exact_div(b)
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def _bareiss(a, ncols, stop_at_rank=None):
    """In-place fraction-free elimination; returns ``(rank, sign, last_pivot)``."""
    nrows = len(a)
    prev = 1
    rank = 0
    sign = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        prow = a[rank]
        pv = prow[c]
        for i in range(rank + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                v = pv * row[j]
                if f and prow[j]:
                    v = v - f * prow[j]
                row[j] = _exact_div(v, prev) if v else v
            row[c] = 0 * pv
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank, sign, prev


def clear_denominators(m):
    """Scale each column of a rational-function matrix by a common denominator.

    Column scaling by nonzero elements preserves rank. Returns a matrix over the
    Laurent ring.
    """
    if m.ring.kind != "FRAC":
        raise UnsupportedRingError("expected rational-function entries")
    r = m.ring.param
    cols = []
    for j in range(m.cols):
        col = m.column(j)
        dens = []
        for x in col:
            if x and not x.den.is_unit() and not any(x.den == d for d in dens):
                dens.append(x.den)
        if r == 1:
            common = LaurentPoly.one(1)
            for d in dens:
                common = common.exact_div(common.gcd(d)) * d
        else:
            common = LaurentPoly.one(r)
            for d in dens:
                common = common * d
        out = []
        for x in col:
            if not x:
                out.append(LaurentPoly.zero(r))
            else:
                out.append(x.num * common.exact_div(x.den))
        cols.append(out)
    data = [[cols[j][i] for j in range(m.cols)] for i in range(m.rows)]
    from .matrix import LAURENT
    return Matrix(data, ring=LAURENT(r), shape=m.shape)


def bareiss_rank(m):
    """Rank via fraction-free (Bareiss) elimination over the coefficient domain."""
    if m.ring.kind == "FRAC":
        m = clear_denominators(m)
    elif m.ring.kind == "GF":
        return _rank_mod_p(m.data, m.ring.param)
    elif m.ring.kind == "QQ":
        m = _integerize(m)
    a = [list(r) for r in m.data]
    rank, _, _ = _bareiss(a, m.cols)
    return rank


def _integerize(m):
    from math import lcm
    out = []
    for r in m.data:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return Matrix(out, ring=QQ, shape=m.shape)


def determinant(m):
    """Determinant of a square matrix over QQ, GF(p), Q[H] or Q(H)."""
    if m.rows != m.cols:
        raise ShapeError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return m.ring.one()
    ring = m.ring
    if ring.kind in ("QQ", "LAURENT"):
        a = [list(r) for r in m.data]
        rank, sign, last = _bareiss(a, n)
        if rank < n:
            return ring.zero()
        return ring.coerce(last * sign if not isinstance(last, int) else sign * last)
    # field elimination
    a = [list(r) for r in m.data]
    det = ring.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return ring.zero()
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        lead = a[c][c]
        det = det * lead
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / lead
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# --- evaluation ranks -----------------------------------------------------------

def evaluation_rank(m, point, prime=EVAL_PRIME):
    """Rank after mapping entries to F_prime at an integer point.

    This is a ring homomorphism on p-integral Laurent polynomials, so the result
    is a lower bound for the rank over the fraction field. Raises
    ``ZeroDivisionError`` when the point is a pole or a coefficient is not
    p-integral.
    """
    kind = m.ring.kind
    rows = []
    for r in m.data:
        line = []
        for x in r:
            if kind == "LAURENT":
                line.append(x.evaluate_mod(point, prime))
            elif kind == "FRAC":
                d = x.den.evaluate_mod(point, prime)
                if not d:
                    raise ZeroDivisionError("evaluation point is a pole")
                line.append(x.num.evaluate_mod(point, prime) * pow(d, -1, prime) % prime)
            elif kind == "QQ":
                x = Fraction(x)
                if x.denominator % prime == 0:
                    raise ZeroDivisionError("coefficient not p-integral")
                line.append(x.numerator * pow(x.denominator, -1, prime) % prime)
            else:
                raise UnsupportedRingError("evaluation rank needs characteristic zero entries")
        rows.append(line)
    return _rank_mod_p(rows, prime)


def rational_evaluation_rank(m, point):
    """Rank over Q after substituting a rational point (no poles allowed)."""
    return naive_rank(m.evaluate(point))


def _eval_points(nvars):
    for seed in _EVAL_SEEDS:
        yield tuple((seed * (i + 3) * 2654435761) % EVAL_PRIME or 1 for i in range(nvars))


def matrix_rank(m, method="auto"):
    """Rank of ``m`` over its field of fractions.

    ``method`` is ``"auto"`` (evaluation certificate, falling back to Bareiss),
    ``"bareiss"`` or ``"naive"``. All methods are exact; ``auto`` only returns
    early when the evaluation lower bound already equals ``min(rows, cols)``.
    """
    if not isinstance(m, Matrix):
        raise MalformedInputError("matrix_rank expects a Matrix")
    if m.rows == 0 or m.cols == 0:
        return 0
    kind = m.ring.kind
    if kind == "GF":
        return _rank_mod_p(m.data, m.ring.param)
    if method == "naive":
        return naive_rank(m)
    if method == "bareiss":
        return bareiss_rank(m)
    if method != "auto":
        raise ValueError(f"unknown rank method {method!r}")
    if kind == "QQ":
        return naive_rank(m)
    full = min(m.rows, m.cols)
    best = 0
    for pt in _eval_points(m.ring.param):
        try:
            best = max(best, evaluation_rank(m, pt))
        except ZeroDivisionError:
            continue
        if best == full:
            return full
    return bareiss_rank(m)


# --- solving ---------------------------------------------------------------------

def solve_linear(m, rhs):
    """One solution ``x`` of ``m @ x == rhs`` over a field, or ``None``."""
    if m.rows != rhs.rows:
        raise ShapeError(f"shape mismatch: {m.shape} vs rhs {rhs.shape}")
    m = _field_of(m)
    rhs = _field_of(rhs)
    if rhs.ring != m.ring:
        rhs = rhs.to_ring(m.ring)
    aug = m.hstack(rhs)
    R, pivots = rref(aug)
    n = m.cols
    if any(c >= n for c in pivots):
        return None
    ring = m.ring
    x = [[ring.zero()] * rhs.cols for _ in range(n)]
    for i, c in enumerate(pivots):
        x[c] = list(R.data[i][n:])
    return Matrix(x, ring=ring, shape=(n, rhs.cols))


def inverse(m):
    if m.rows != m.cols:
        raise ShapeError("inverse of a non-square matrix")
    x = solve_linear(m, Matrix.identity(m.rows, _field_of(m).ring))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def row_space_basis(m):
    """Nonzero rows of the reduced row echelon form."""
    R, piv = rref(m)
    return [R.row(i) for i in range(len(piv))]


def left_kernel_basis(m):
    """Basis of row vectors ``v`` with ``v @ m == 0``."""
    mt = _field_of(m).transpose()
    R, piv = rref(mt)
    ring = R.ring
    free = [j for j in range(mt.cols) if j not in piv]
    basis = []
    for f in free:
        v = [ring.zero()] * mt.cols
        v[f] = ring.one()
        for i, c in enumerate(piv):
            v[c] = -R.data[i][f]
        basis.append(tuple(v))
    return basis
