"""Smith normal form over the univariate Laurent ring Q[t^+-1].

Q[t^+-1] is a Euclidean domain for the span ``max exponent - min exponent``;
units are the monomials ``c * t^a``.
"""

from __future__ import annotations

import math

from ..errors import UnsupportedRingError
from .laurent import LaurentPoly
from .matrix import Matrix


def _check(m):
    if m.ring.kind != "LAURENT" or m.ring.param != 1:
        raise UnsupportedRingError(
            f"Smith normal form needs univariate Laurent entries, got {m.ring}")


def _min_span(a, s, nr, nc):
    best = None
    for i in range(s, nr):
        row = a[i]
        for j in range(s, nc):
            x = row[j]
            if x:
                d = x.span()
                if best is None or d < best[0]:
                    best = (d, i, j)
                    if d == 0:
                        return best
    return best


def snf_univariate(m):
    """Invariant factors ``d_1 | d_2 | ...`` of a matrix over Q[t^+-1].

    Returns ``min(rows, cols)`` unit-normal Laurent polynomials (monic, minimal
    exponent 0); trailing entries may be zero.
    """
    _check(m)
    nr, nc = m.rows, m.cols
    a = [list(r) for r in m.data]
    zero = LaurentPoly.zero(1)
    out = []
    s = 0
    while s < min(nr, nc):
        best = _min_span(a, s, nr, nc)
        if best is None:
            break
        _, i, j = best
        a[s], a[i] = a[i], a[s]
        if j != s:
            for row in a:
                row[s], row[j] = row[j], row[s]
        while True:
            piv = a[s][s]
            dirty = False
            for i in range(s + 1, nr):
                x = a[i][s]
                if not x:
                    continue
                q, r = x.divmod_univariate(piv)
                row, prow = a[i], a[s]
                for j in range(s, nc):
                    if prow[j]:
                        row[j] = row[j] - q * prow[j]
                if r:
                    dirty = True
            for j in range(s + 1, nc):
                x = a[s][j]
                if not x:
                    continue
                q, r = x.divmod_univariate(piv)
                for i in range(s, nr):
                    if a[i][s]:
                        a[i][j] = a[i][j] - q * a[i][s]
                if r:
                    dirty = True
            if dirty:
                # a remainder of smaller span exists in row or column s
                cand = [(a[i][s].span(), i, s) for i in range(s + 1, nr) if a[i][s]]
                cand += [(a[s][j].span(), s, j) for j in range(s + 1, nc) if a[s][j]]
                _, i, j = min(cand)
                a[s], a[i] = a[i], a[s]
                if j != s:
                    for row in a:
                        row[s], row[j] = row[j], row[s]
                continue
            # row and column clear: enforce divisibility into the rest
            bad = None
            for i in range(s + 1, nr):
                for j in range(s + 1, nc):
                    x = a[i][j]
                    if x and not piv.is_unit():
                        _, r = x.divmod_univariate(piv)
                        if r:
                            bad = i
                            break
                if bad is not None:
                    break
            if bad is None:
                break
            a[s] = [x + y for x, y in zip(a[s], a[bad])]
        out.append(a[s][s].unit_normal())
        s += 1
    out.extend([zero] * (min(nr, nc) - len(out)))
    return out


def cokernel_dimension(m):
    """Q-dimension of ``Q[t^+-1]^cols / rowspace(m)``; ``math.inf`` if infinite."""
    inv = snf_univariate(m)
    nonzero = [d for d in inv if d]
    if len(nonzero) < m.cols:
        return math.inf
    return sum(d.span() for d in nonzero)


def torsion_dimension(m):
    """Q-dimension of the torsion submodule of the cokernel of ``m``."""
    return sum(d.span() for d in snf_univariate(m) if d)
