import pytest

from cginject.errors import HypothesisViolation, MalformedInputError, NotAcyclicError, ShapeError
from cginject.exact.matrix import GF, Matrix
from cginject.groups import load_profile, splitting_subgroup
from cginject.io import complex_from_json, fixture_path, group_from_json, read_json
from cginject.knots import dihedral_assignment, parse_presentation, relative_complex, verify_rep
from cginject.io import fixture_text
from cginject.modmaps import GroupRingElement, GroupRingMatrix, augment_mod_p
from cginject.reps import induce_rep, regular_base, tautological, trivial_rep
from cginject.complexes import (
    Contraction,
    FreeChainComplex,
    chain_contraction_mod_p,
    chain_endomorphism,
    homology_dims,
    lift_contraction,
    prop41_pipeline,
)

DIHEDRAL, _ = load_profile("dihedral3")
E = DIHEDRAL.identity()


def identity_complex(G=DIHEDRAL):
    return FreeChainComplex([1, 1], [GroupRingMatrix.identity(1, G.identity())], G.identity())


def trefoil():
    pres = parse_presentation(fixture_text("trefoil.txt"))
    G, rep = verify_rep(pres, dihedral_assignment(pres, (0, 1, 2), 3), prime=3)
    return pres, G, rep


def test_identity_complex_homology():
    C = identity_complex()
    assert homology_dims(C, ("fp", 3)) == [0, 0]
    assert homology_dims(C, tautological(DIHEDRAL)) == [0, 0]
    assert homology_dims(C, trivial_rep(DIHEDRAL)) == [0, 0]


def test_shape_and_square_zero_checks():
    with pytest.raises(ShapeError):
        FreeChainComplex([1, 2], [GroupRingMatrix.identity(1, E)], E)
    one = GroupRingMatrix.identity(1, E)
    with pytest.raises(MalformedInputError):
        FreeChainComplex([1, 1, 1], [one, one], E)


def test_identity_contraction():
    C = identity_complex()
    gamma = chain_contraction_mod_p(C, 3)
    assert gamma.maps[0] == Matrix([[1]], ring=GF(3))
    assert gamma.maps[1].shape == (1, 0)
    assert gamma.verify(C)


def test_zero_boundaries_not_acyclic():
    C = FreeChainComplex([1, 1], [GroupRingMatrix.zeros(1, 1)], E)
    with pytest.raises(NotAcyclicError) as exc:
        chain_contraction_mod_p(C, 2)
    assert exc.value.degree == 0
    assert homology_dims(C, ("fp", 2)) == [1, 1]


def test_trefoil_relative_contraction_mod3():
    pres, G, rep = trefoil()
    C = relative_complex(pres, G)
    assert C.ranks == [0, 2, 2]
    gamma = chain_contraction_mod_p(C, 3)
    assert gamma.verify(C)
    assert homology_dims(C, ("fp", 3)) == [0, 0, 0]
    # any broken map is caught by verify
    bad = Contraction(3, [g.scale(2) if g.rows and g.cols else g for g in gamma.maps])
    assert not bad.verify(C)


def test_lift_round_trip():
    pres, G, rep = trefoil()
    C = relative_complex(pres, G)
    gamma = chain_contraction_mod_p(C, 3)
    lifted = lift_contraction(gamma, G.identity())
    for g, L in zip(gamma.maps, lifted):
        if L.rows and L.cols:
            assert augment_mod_p(L, 3) == g
            assert set(L.elements()) <= {G.identity()}
    for f in chain_endomorphism(C, lifted):
        if f.rows:
            assert augment_mod_p(f, 3) == Matrix.identity(f.rows, GF(3))


def test_lift_canonical_representatives():
    gamma = Contraction(3, [Matrix([[2, 0]], ring=GF(3))])
    (L,) = lift_contraction(gamma, E)
    assert L.entries[0][0] == GroupRingElement.of(E, 2)
    assert L.entries[0][1] == GroupRingElement()


def test_euler_characteristic_matches():
    pres, G, rep = trefoil()
    C = relative_complex(pres, G)
    for coeffs in (("fp", 2), ("fp", 3), rep, trivial_rep(G)):
        dims = homology_dims(C, coeffs)
        k = 1 if isinstance(coeffs, tuple) else coeffs.k
        assert sum((-1) ** i * x for i, x in enumerate(dims)) == k * (0 - 2 + 2)


def test_pipeline_identity_complex():
    report = prop41_pipeline(identity_complex(), tautological(DIHEDRAL), 3)
    assert report.ok


def test_pipeline_trefoil_induced():
    pres, G, _ = trefoil()
    cert = splitting_subgroup(G)
    base, d = regular_base(G, cert)
    rep = induce_rep(G, base, d, cert)
    C = relative_complex(pres, G)
    report = prop41_pipeline(C, rep, 3)
    assert report.augmentation_identity and report.chain_map
    assert all(report.invertible) and report.dims == [0, 0, 0]
    assert report.acyclic_direct and report.acyclic_via_f and report.agree


def test_pipeline_refuses_non_p_group():
    with pytest.raises(HypothesisViolation) as exc:
        prop41_pipeline(identity_complex(), tautological(DIHEDRAL), 2)
    assert exc.value.check == "p-group"


def test_pipeline_refuses_non_acyclic():
    C = FreeChainComplex([1, 1], [GroupRingMatrix.zeros(1, 1)], E)
    with pytest.raises(HypothesisViolation) as exc:
        prop41_pipeline(C, tautological(DIHEDRAL), 3)
    assert exc.value.check == "fp-acyclic"


def test_complex_fixture_loads():
    G = group_from_json(read_json(fixture_path("trefoil_dihedral3_group.json")))
    C = complex_from_json(read_json(fixture_path("trefoil_relative_complex.json")), G)
    assert C.ranks == [0, 2, 2]
    assert homology_dims(C, tautological(G)) == [0, 0, 0]
