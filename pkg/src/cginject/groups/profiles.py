"""Synthetic groups H x| P realized by permutation matrices.

P acts on Q[P] by the right regular representation R and each free generator
t_i of H acts through an automorphism s_i of P, realized as the permutation
matrix A(s_i) of e_x -> e_{s_i(x)}. Then A^-1 R(q) A = R(s(q)), so the pair
(A(s_i), e_i) together with (R(q), 0) generates a faithful copy of H x| P.
"""

from __future__ import annotations

from ..errors import MalformedInputError
from .finite import FiniteGroupTable, compose
from .realized import RealizedElement, build_realized_group


def perm_matrix(perm):
    """Matrix with ``e_x -> e_{perm[x]}`` under the row-vector convention."""
    n = len(perm)
    return tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n))


def right_regular(P, q):
    return perm_matrix(tuple(P.mul(x, q) for x in range(P.order)))


def semidirect_group(P, automorphisms, prime=None, generator_names=None, p_names=None):
    """Realize Z^r x| P where the i-th basis vector acts by ``automorphisms[i]``."""
    r = len(automorphisms)
    for a in automorphisms:
        for b in automorphisms:
            if compose(a, b) != compose(b, a):
                raise MalformedInputError("H is abelian, so the automorphisms must commute")
    gens = []
    for i, s in enumerate(automorphisms):
        h = tuple(int(i == j) for j in range(r))
        gens.append(RealizedElement(perm_matrix(s), h))
    pgens = [RealizedElement(right_regular(P, q), (0,) * r) for q in P.generators()]
    if generator_names is None:
        generator_names = ["t"] if r == 1 else [f"t{i + 1}" for i in range(r)]
    return build_realized_group(gens, pgens, prime=prime, generator_names=generator_names,
                                p_names=p_names)


def _inversion(n):
    return tuple((-x) % n for x in range(n))


def _klein_rotation():
    # (Z/2)^2 with index 2a + b; cycle (0,1) -> (1,0) -> (1,1)
    return (0, 2, 3, 1)


def _quaternion_rotation(Q):
    labels = Q.labels
    nxt = {"1": "1", "i": "j", "j": "k", "k": "i"}
    return tuple(labels.index((s, nxt[u])) for s, u in labels)


def z_profile():
    return semidirect_group(FiniteGroupTable.cyclic(1), [(0,)], prime=2)


def dihedral3():
    return semidirect_group(FiniteGroupTable.cyclic(3), [_inversion(3)], prime=3)


def z2_dihedral3():
    return semidirect_group(FiniteGroupTable.cyclic(3), [_inversion(3), _inversion(3)], prime=3)


def z_klein4():
    V = FiniteGroupTable.direct_product(FiniteGroupTable.cyclic(2), FiniteGroupTable.cyclic(2))
    return semidirect_group(V, [_klein_rotation()], prime=2)


def cyclic9():
    return semidirect_group(FiniteGroupTable.cyclic(9), [], prime=3)


def z_quaternion():
    Q = FiniteGroupTable.quaternion()
    return semidirect_group(Q, [_quaternion_rotation(Q)], prime=2)


def cyclic3_trivial_h():
    """Z/3 with trivial H; paired with p = 2 it violates the p-group hypothesis."""
    return semidirect_group(FiniteGroupTable.cyclic(3), [], prime=None)


# name -> (factory, prime)
PROFILES = {
    "z": (z_profile, 2),
    "dihedral3": (dihedral3, 3),
    "z2_dihedral3": (z2_dihedral3, 3),
    "z_klein4": (z_klein4, 2),
    "cyclic9": (cyclic9, 3),
    "z_quaternion": (z_quaternion, 2),
}

ACCEPTANCE_PROFILES = ("z", "dihedral3", "z2_dihedral3", "z_klein4", "cyclic9")


def load_profile(name):
    try:
        factory, p = PROFILES[name]
    except KeyError:
        raise MalformedInputError(
            f"unknown profile {name!r}; choose from {', '.join(sorted(PROFILES))}") from None
    return factory(), p
