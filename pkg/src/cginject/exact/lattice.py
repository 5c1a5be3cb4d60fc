"""Small integer-lattice utilities (Hermite normal form, kernels, membership)."""

from __future__ import annotations

from fractions import Fraction


def hnf_with_transform(vectors, dim=None):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U * A == H`` where ``A`` has the
    given vectors as rows. Nonzero rows of ``H`` come first, in echelon form with
    positive pivots and reduced entries above each pivot.
    """
    a = [list(v) for v in vectors]
    m = len(a)
    n = dim if dim is not None else (len(a[0]) if a else 0)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            while a[i][c]:
                if not a[r][c]:
                    a[r], a[i] = a[i], a[r]
                    u[r], u[i] = u[i], u[r]
                    continue
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                if a[i][c]:
                    a[r], a[i] = a[i], a[r]
                    u[r], u[i] = u[i], u[r]
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf_basis(vectors, dim):
    h, _ = hnf_with_transform(vectors, dim)
    return [tuple(v) for v in h if any(v)]


def integer_kernel(vectors, dim):
    """Basis of integer relations ``c`` with ``sum c_i * vectors[i] == 0``."""
    h, u = hnf_with_transform(vectors, dim)
    return [tuple(u[i]) for i in range(len(h)) if not any(h[i])]


def express(basis, v):
    """Integer coefficients of ``v`` in an echelon ``basis``, or ``None``."""
    v = [Fraction(x) for x in v]
    coeffs = []
    for b in basis:
        piv = next(j for j, x in enumerate(b) if x)
        c = v[piv] / b[piv]
        if c.denominator != 1:
            return None
        coeffs.append(int(c))
        if c:
            v = [x - c * y for x, y in zip(v, b)]
    if any(v):
        return None
    return tuple(coeffs)


def determinant_int(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det)


def sublattice_index(sub_basis, basis):
    """Index of the lattice spanned by ``sub_basis`` inside the one spanned by ``basis``."""
    if len(sub_basis) != len(basis):
        raise ValueError("sublattice of smaller rank has infinite index")
    if not basis:
        return 1
    coords = []
    for v in sub_basis:
        c = express(basis, v)
        if c is None:
            raise ValueError(f"{v} is not in the ambient lattice")
        coords.append(c)
    return abs(determinant_int(coords))
