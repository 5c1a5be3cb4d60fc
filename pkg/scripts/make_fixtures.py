"""Regenerate the JSON fixtures bundled with the package.

Run from the repository root: ``python3 scripts/make_fixtures.py``.
"""

import json
from itertools import product
from pathlib import Path

from cginject import io
from cginject.groups.profiles import cyclic3_trivial_h, dihedral3
from cginject.groups.realized import RealizedElement
from cginject.knots import (
    check_relators,
    dihedral_assignment,
    parse_presentation,
    relative_complex,
    trivial_assignment,
    verify_rep,
)
from cginject.modmaps import GroupRingElement, GroupRingMatrix
from cginject.errors import RelatorViolation
from cginject.complexes import FreeChainComplex
from cginject.groups.profiles import perm_matrix
from cginject.reps import tautological

OUT = Path(__file__).resolve().parent.parent / "src" / "cginject" / "fixtures"


def write(name, obj):
    (OUT / name).write_text(io.dumps(obj), encoding="utf-8")
    print("wrote", name)


def affine_trefoil_assignment(pres):
    """Meridians act on M = F_4 x F_3 by v -> t v + c with t = (x, -1)."""
    pts = [(a, b, z) for a in range(2) for b in range(2) for z in range(3)]
    idx = {p: i for i, p in enumerate(pts)}

    def t_act(p):
        a, b, z = p
        # multiplication by x in F_2[x]/(x^2 + x + 1): a + b x -> b + (a + b) x
        return (b, (a + b) % 2, (-z) % 3)

    def add(p, q):
        return ((p[0] + q[0]) % 2, (p[1] + q[1]) % 2, (p[2] + q[2]) % 3)

    def image(c):
        perm = tuple(idx[add(t_act(p), c)] for p in pts)
        return RealizedElement(perm_matrix(perm), (1,))

    for cs in product(pts, repeat=len(pres.generators) - 1):
        colors = [(0, 0, 0)] + list(cs)
        imgs = {n: image(c) for n, c in zip(pres.generators, colors)}
        try:
            check_relators(pres, imgs)
        except RelatorViolation:
            continue
        G, _ = verify_rep(pres, imgs, cap=64)
        if G.order_P == 12:
            return imgs
    raise RuntimeError("no affine coloring with |P| = 12")


def main():
    trefoil = parse_presentation(io.fixture_text("trefoil.txt"))
    fig8 = parse_presentation(io.fixture_text("figure_eight.txt"))
    unknot = parse_presentation(io.fixture_text("unknot.txt"))

    tre_d3 = dihedral_assignment(trefoil, [0, 1, 2], 3)
    write("trefoil_dihedral3.json", io.assignment_to_json(tre_d3))
    write("figure_eight_dihedral5.json",
          io.assignment_to_json(dihedral_assignment(fig8, [0, 1, 3, 2], 5)))
    write("unknot_trivial.json", io.assignment_to_json(trivial_assignment(unknot)))
    write("trefoil_trivial.json", io.assignment_to_json(trivial_assignment(trefoil)))
    write("trefoil_affine12.json", io.assignment_to_json(affine_trefoil_assignment(trefoil)))
    bad = dict(tre_d3)
    bad["x3"] = tre_d3["x2"]
    write("trefoil_corrupted.json", io.assignment_to_json(bad))

    # groups, maps and representations for the theorem checker
    D = dihedral3()
    write("dihedral3_group.json", io.group_to_json(D))
    C3 = cyclic3_trivial_h()
    write("cyclic3_group.json", io.group_to_json(C3))
    e = D.identity()
    write("identity_map.json", io.map_to_json(GroupRingMatrix.identity(1, e), D))
    q, t = D.element("q1"), D.element("t")
    two_qt = GroupRingMatrix([[GroupRingElement.of(e, 2, ()) +
                               GroupRingElement.of(q * t, 1, (("q1", 1), ("t", 1)))]])
    write("dihedral3_2_plus_qt_map.json", io.map_to_json(two_qt, D))
    g = C3.element("q1")
    ones = GroupRingElement.of(C3.identity(), 1, ()) + GroupRingElement.of(g, 1, (("q1", 1),)) \
        + GroupRingElement.of(g * g, 1, (("q1", 2),))
    write("counterexample_map.json", io.map_to_json(GroupRingMatrix([[ones]]), C3))
    write("cyclic3_regular_rep.json", io.rep_to_json(tautological(C3)))

    # complexes
    write("dihedral3_identity_complex.json",
          io.complex_to_json(FreeChainComplex([1, 1], [GroupRingMatrix.identity(1, e)], e), D))
    G, _ = verify_rep(trefoil, tre_d3, prime=3)
    write("trefoil_dihedral3_group.json", io.group_to_json(G))
    write("trefoil_relative_complex.json", io.complex_to_json(relative_complex(trefoil, G), G))
    Gt, _ = verify_rep(trefoil, trivial_assignment(trefoil))
    write("trefoil_trivial_group.json", io.group_to_json(Gt))
    write("trefoil_trivial_relative_complex.json",
          io.complex_to_json(relative_complex(trefoil, Gt), Gt))


if __name__ == "__main__":
    main()
