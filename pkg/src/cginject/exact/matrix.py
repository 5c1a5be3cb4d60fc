"""Dense immutable matrices over one exact scalar ring."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import MalformedInputError, ShapeError, UnsupportedRingError
from .fracfield import FracElem
from .laurent import LaurentPoly
from .primefield import Fp


@dataclass(frozen=True)
class Ring:
    """Scalar ring descriptor.

    ``kind`` is one of ``QQ``, ``GF`` (``param`` = p), ``LAURENT`` and ``FRAC``
    (``param`` = number of variables).
    """

    kind: str
    param: int = 0

    @property
    def is_field(self):
        return self.kind != "LAURENT" or self.param == 0

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        k = self.kind
        if k == "QQ":
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, LaurentPoly) and x.is_constant():
                return self.coerce(x.constant_value())
        elif k == "GF":
            if isinstance(x, int):
                return Fp(x, self.param)
            if isinstance(x, Fp) and x.p == self.param:
                return x
        elif k == "LAURENT":
            if isinstance(x, (int, Fraction)):
                return LaurentPoly.constant(x, self.param)
            if isinstance(x, LaurentPoly) and x.nvars == self.param:
                return x
        elif k == "FRAC":
            if isinstance(x, (int, Fraction)):
                return FracElem.constant(x, self.param)
            if isinstance(x, LaurentPoly) and x.nvars == self.param:
                return FracElem.from_poly(x)
            if isinstance(x, FracElem) and x.nvars == self.param:
                return x
        raise MalformedInputError(f"cannot coerce {x!r} into {self}")

    def __str__(self):
        if self.kind == "QQ":
            return "QQ"
        if self.kind == "GF":
            return f"GF({self.param})"
        if self.kind == "LAURENT":
            return f"Q[H], rank {self.param}"
        return f"Q(H), rank {self.param}"


QQ = Ring("QQ")


def GF(p):
    return Ring("GF", p)


def LAURENT(r):
    return Ring("LAURENT", r)


def FRAC(r):
    return Ring("FRAC", r)


def ring_of(x):
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, Fp):
        return GF(x.p)
    if isinstance(x, LaurentPoly):
        return LAURENT(x.nvars)
    if isinstance(x, FracElem):
        return FRAC(x.nvars)
    if isinstance(x, int):
        return None
    raise MalformedInputError(f"unsupported scalar {x!r}")


def infer_ring(entries):
    rings = set()
    for x in entries:
        r = ring_of(x)
        if r is not None:
            rings.add(r)
    if len(rings) > 1:
        raise MalformedInputError(
            "mixed scalar kinds in one matrix: " + ", ".join(sorted(map(str, rings))))
    return rings.pop() if rings else QQ


class Matrix:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, data, ring=None, shape=None):
        data = [list(r) for r in data]
        if shape is None:
            if not data:
                raise ShapeError("empty matrix needs an explicit shape")
            shape = (len(data), len(data[0]))
        rows, cols = shape
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError(f"entries do not form a {rows}x{cols} array")
        if ring is None:
            ring = infer_ring(x for r in data for x in r)
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(ring.coerce(x) for x in r) for r in data)

    @classmethod
    def _raw(cls, data, ring, rows, cols):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.rows = rows
        obj.cols = cols
        obj.data = data
        return obj

    # constructors

    @classmethod
    def zeros(cls, rows, cols, ring=QQ):
        z = ring.zero()
        return cls._raw(tuple((z,) * cols for _ in range(rows)), ring, rows, cols)

    @classmethod
    def identity(cls, n, ring=QQ):
        z, o = ring.zero(), ring.one()
        return cls._raw(
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)),
            ring, n, n)

    @classmethod
    def from_blocks(cls, blocks, ring, block_rows=None, block_cols=None):
        """Assemble a block matrix; ``blocks[i][j]`` is a Matrix or ``None`` (zero)."""
        nbr = len(blocks)
        nbc = len(blocks[0]) if nbr else 0
        if block_rows is None:
            block_rows = [next(b.rows for b in row if b is not None) for row in blocks]
        if block_cols is None:
            block_cols = [next(blocks[i][j].cols for i in range(nbr) if blocks[i][j] is not None)
                          for j in range(nbc)]
        z = ring.zero()
        out = []
        for bi in range(nbr):
            for r in range(block_rows[bi]):
                line = []
                for bj in range(nbc):
                    b = blocks[bi][bj]
                    if b is None:
                        line.extend([z] * block_cols[bj])
                    else:
                        line.extend(b.data[r])
                out.append(tuple(line))
        return cls._raw(tuple(out), ring, sum(block_rows), sum(block_cols))

    # basic access

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def tolist(self):
        return [list(r) for r in self.data]

    def entries(self):
        for r in self.data:
            yield from r

    # algebra

    def transpose(self):
        return Matrix._raw(tuple(zip(*self.data)) if self.rows else tuple(
            () for _ in range(self.cols)), self.ring, self.cols, self.rows)

    T = property(transpose)

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise UnsupportedRingError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
            self.ring, self.rows, self.cols)

    def __sub__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
            self.ring, self.rows, self.cols)

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.data),
                           self.ring, self.rows, self.cols)

    def scale(self, c):
        c = self.ring.coerce(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.data),
                           self.ring, self.rows, self.cols)

    def __matmul__(self, other):
        self._check_ring(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero()
        cols = other.transpose().data
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            line = []
            for c in cols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                line.append(s)
            out.append(tuple(line))
        return Matrix._raw(tuple(out), self.ring, self.rows, other.cols)

    def __pow__(self, n):
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        if n < 0:
            from .linalg import inverse
            return inverse(self) ** -n
        result = Matrix.identity(self.rows, self.ring)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def is_zero(self):
        return not any(x for r in self.data for x in r)

    def is_identity(self):
        return self.rows == self.cols and all(
            (x == 1) if i == j else not x
            for i, r in enumerate(self.data) for j, x in enumerate(r))

    def map(self, fn, ring):
        return Matrix._raw(tuple(tuple(ring.coerce(fn(x)) for x in r) for r in self.data),
                           ring, self.rows, self.cols)

    def to_ring(self, ring):
        return Matrix._raw(tuple(tuple(ring.coerce(x) for x in r) for r in self.data),
                           ring, self.rows, self.cols)

    def submatrix(self, rows, cols):
        rows = list(rows)
        cols = list(cols)
        return Matrix._raw(tuple(tuple(self.data[i][j] for j in cols) for i in rows),
                           self.ring, len(rows), len(cols))

    def vstack(self, other):
        self._check_ring(other)
        if self.cols != other.cols:
            raise ShapeError("column counts differ")
        return Matrix._raw(self.data + other.data, self.ring, self.rows + other.rows, self.cols)

    def hstack(self, other):
        self._check_ring(other)
        if self.rows != other.rows:
            raise ShapeError("row counts differ")
        return Matrix._raw(tuple(a + b for a, b in zip(self.data, other.data)),
                           self.ring, self.rows, self.cols + other.cols)

    def evaluate(self, point):
        """Substitute a rational point into Laurent or rational-function entries."""
        if self.ring.kind not in ("LAURENT", "FRAC"):
            raise UnsupportedRingError("evaluation needs polynomial entries")
        return Matrix._raw(tuple(tuple(QQ.coerce(x.evaluate(point)) for x in r)
                                 for r in self.data), QQ, self.rows, self.cols)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.ring})"

    def __str__(self):
        if not self.rows:
            return f"[] ({self.rows}x{self.cols})"
        cells = [[str(x) for x in r] for r in self.data]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)
