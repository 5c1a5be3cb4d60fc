"""Finite free chain complexes over Z[Gamma], contractions mod p and twisted homology.

``boundaries[i - 1]`` is d_i: C_i -> C_{i-1}, a ``rank(C_i) x rank(C_{i-1})``
group-ring matrix acting on row vectors. Composition d_i then d_{i-1} is
``D_i @ D_{i-1}``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .errors import (
    HypothesisViolation,
    MalformedInputError,
    NotAcyclicError,
    ShapeError,
    TheoremFalsification,
)
from .exact.linalg import matrix_rank, solve_linear
from .exact.matrix import GF, Matrix
from .exact.primefield import is_prime
from .modmaps import (
    GroupRingMatrix,
    augment_mod_p,
    check_main_theorem,
    is_prime_power,
    specialize_map,
)


class FreeChainComplex:
    def __init__(self, ranks, boundaries, identity, check=True):
        ranks = [int(n) for n in ranks]
        boundaries = list(boundaries)
        if len(boundaries) != max(len(ranks) - 1, 0):
            raise ShapeError(f"{len(ranks)} chain groups need {len(ranks) - 1} boundary maps")
        for i, d in enumerate(boundaries, start=1):
            if d.shape != (ranks[i], ranks[i - 1]):
                raise ShapeError(f"d_{i} has shape {d.shape}, expected {(ranks[i], ranks[i - 1])}")
        self.ranks = ranks
        self.boundaries = boundaries
        self.identity = identity
        if check:
            self.check_square_zero()

    @property
    def top(self):
        return len(self.ranks) - 1

    def d(self, i):
        """d_i as a group-ring matrix; zero-size outside 1..top."""
        if 1 <= i <= self.top:
            return self.boundaries[i - 1]
        rows = self.ranks[i] if 0 <= i <= self.top else 0
        cols = self.ranks[i - 1] if 0 <= i - 1 <= self.top else 0
        return GroupRingMatrix.zeros(rows, cols)

    def check_square_zero(self):
        for i in range(2, self.top + 1):
            if not (self.d(i) @ self.d(i - 1)).is_zero():
                raise MalformedInputError(f"d_{i - 1} d_{i} is not zero")
        return True

    def __repr__(self):
        return f"FreeChainComplex(ranks={self.ranks})"


def _rank_fp(m, p):
    return matrix_rank(augment_mod_p(m, p)) if m.rows and m.cols else 0


def _rank_rep(m, rep, method="auto"):
    return matrix_rank(specialize_map(m, rep), method) if m.rows and m.cols else 0


def homology_dims(C, coeffs):
    """Dimensions of H_i with coefficients ``("fp", p)`` or a TensorRepresentation.

    Over Q(H)^k the dimension is over the fraction field Q(H).
    """
    if isinstance(coeffs, tuple) and coeffs[0] == "fp":
        p = coeffs[1]
        if not is_prime(p):
            raise MalformedInputError(f"{p} is not prime")
        k = 1
        ranks = [_rank_fp(C.d(i), p) for i in range(C.top + 2)]
    else:
        rep = coeffs
        k = rep.k
        ranks = [_rank_rep(C.d(i), rep) for i in range(C.top + 2)]
    dims = [C.ranks[i] * k - ranks[i] - ranks[i + 1] for i in range(C.top + 1)]
    euler = sum((-1) ** i * x for i, x in enumerate(dims))
    if euler != sum((-1) ** i * k * n for i, n in enumerate(C.ranks)):
        raise ArithmeticError("Euler characteristic mismatch")
    return dims


@dataclass
class Contraction:
    """gamma_i: C_i -> C_{i+1} over F_p with gamma_i d_{i+1} + d_i gamma_{i-1} = Id."""

    prime: int
    maps: list

    def verify(self, C):
        p = self.prime
        for i in range(C.top + 1):
            D_next = augment_mod_p(C.d(i + 1), p)
            D_i = augment_mod_p(C.d(i), p)
            lhs = _fp_mul(self.maps[i], D_next, p)
            if i > 0:
                lhs = lhs + _fp_mul(D_i, self.maps[i - 1], p)
            if lhs != Matrix.identity(C.ranks[i], GF(p)):
                return False
        return True


def _fp_mul(a, b, p):
    if a.cols == 0 or a.rows == 0 or b.cols == 0:
        return Matrix.zeros(a.rows, b.cols, GF(p))
    return a @ b


def chain_contraction_mod_p(C, p):
    """Contraction of C (x) F_p, built degree by degree; NotAcyclicError if none."""
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    ring = GF(p)
    maps = []
    prev = None
    for i in range(C.top + 1):
        n = C.ranks[i]
        D_i = augment_mod_p(C.d(i), p)
        D_next = augment_mod_p(C.d(i + 1), p)
        U = Matrix.identity(n, ring)
        if prev is not None:
            U = U - _fp_mul(D_i, prev, p)
        if D_next.rows == 0:
            # top degree: nothing to hit, U must already vanish
            if not U.is_zero():
                raise NotAcyclicError(i)
            g = Matrix.zeros(n, 0, ring)
        elif n == 0:
            g = Matrix.zeros(0, D_next.rows, ring)
        else:
            sol = solve_linear(D_next.transpose(), U.transpose())
            if sol is None:
                raise NotAcyclicError(i)
            g = sol.transpose()
        maps.append(g)
        prev = g
    gamma = Contraction(p, maps)
    if not gamma.verify(C):
        raise ArithmeticError("constructed contraction fails d gamma + gamma d = Id")
    return gamma


def lift_contraction(gamma, identity):
    """Lift each F_p entry to its least nonnegative representative times e."""
    return [GroupRingMatrix.from_integer_matrix(
        Matrix([[int(x) for x in row] for row in g.data], shape=g.shape), identity)
        for g in gamma.maps]


@dataclass
class PipelineReport:
    prime: int
    k: int
    ranks: list
    augmentation_identity: bool
    chain_map: bool
    invertible: list = field(default_factory=list)
    dims: list = field(default_factory=list)
    acyclic_direct: bool = False
    acyclic_via_f: bool = False
    agree: bool = False

    @property
    def ok(self):
        return (self.augmentation_identity and self.chain_map and self.acyclic_via_f
                and self.acyclic_direct and self.agree)

    def as_dict(self):
        d = asdict(self)
        d["ok"] = self.ok
        return d


def chain_endomorphism(C, lifted):
    """f_i = gamma_i d_{i+1} + d_i gamma_{i-1} on each C_i."""
    fs = []
    for i in range(C.top + 1):
        n = C.ranks[i]
        f = GroupRingMatrix.zeros(n, n)
        if i < C.top and C.ranks[i + 1]:
            f = f + lifted[i] @ C.d(i + 1)
        if i > 0 and C.ranks[i - 1]:
            f = f + C.d(i) @ lifted[i - 1]
        fs.append(f)
    return fs


def prop41_pipeline(C, rep, p, method="auto"):
    """Lift a mod-p contraction and deduce Q(H)-acyclicity; cross-check directly."""
    order = rep.kernel_image_order()
    if not is_prime_power(order, p):
        raise HypothesisViolation(
            f"alpha(P) has order {order}, not a power of {p}", check="p-group")
    try:
        gamma = chain_contraction_mod_p(C, p)
    except NotAcyclicError as exc:
        raise HypothesisViolation(
            f"complex is not acyclic mod {p} (degree {exc.degree})", check="fp-acyclic") from None
    lifted = lift_contraction(gamma, C.identity)
    for g, L in zip(gamma.maps, lifted):
        if L.rows and L.cols and augment_mod_p(L, p) != g:
            raise ArithmeticError("lift does not reduce to the contraction")
    fs = chain_endomorphism(C, lifted)
    aug = all(augment_mod_p(f, p) == Matrix.identity(f.rows, GF(p)) for f in fs if f.rows)
    chain = True
    for i in range(1, C.top + 1):
        d = C.d(i)
        if d.rows and d.cols and fs[i] @ d != d @ fs[i - 1]:
            chain = False
    invertible = []
    for f in fs:
        if f.rows == 0:
            invertible.append(True)
            continue
        v = check_main_theorem(f, rep, p, method=method)
        invertible.append(v.conclusion_holds)
    dims = homology_dims(C, rep)
    via_f = aug and chain and all(invertible)
    direct = all(x == 0 for x in dims)
    report = PipelineReport(p, rep.k, list(C.ranks), aug, chain, invertible, dims, direct, via_f,
                          (not via_f) or direct)
    if via_f and not direct:
        raise TheoremFalsification(report)
    return report
