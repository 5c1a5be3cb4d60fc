import pytest
from hypothesis import given
from hypothesis import strategies as st

from cginject.errors import (
    CertificateInvalidError,
    HypothesisViolation,
    KernelNotFiniteError,
    MalformedInputError,
)
from cginject.exact.matrix import Matrix
from cginject.groups import (
    PROFILES,
    FiniteGroupTable,
    RealizedElement,
    automorphism_group,
    build_realized_group,
    compose,
    d_zp_certificate,
    decompose,
    enumerate_ball,
    load_profile,
    remark_certificate,
    semidirect_group,
    splitting_subgroup,
    verify_certificate,
)
from cginject.groups.finite import invert_perm
from cginject.groups.splitting import SplittingCertificate


def test_finite_group_basics():
    c6 = FiniteGroupTable.cyclic(6)
    assert c6.order == 6 and c6.is_abelian()
    assert c6.element_order(2) == 3
    assert c6.exponent() == 6
    q8 = FiniteGroupTable.quaternion()
    assert q8.order == 8 and not q8.is_abelian()
    assert len(q8.center()) == 2
    assert c6.subgroup_generated([2]) == {0, 2, 4}


def test_table_axioms_checked():
    with pytest.raises(MalformedInputError):
        FiniteGroupTable([[0, 1], [1, 1]])


@pytest.mark.parametrize("P,expected", [
    (FiniteGroupTable.cyclic(1), 1),
    (FiniteGroupTable.cyclic(3), 2),
    (FiniteGroupTable.cyclic(5), 4),
    (FiniteGroupTable.direct_product(FiniteGroupTable.cyclic(2), FiniteGroupTable.cyclic(2)), 6),
    (FiniteGroupTable.quaternion(), 24),
])
def test_automorphism_group_orders(P, expected):
    auts = automorphism_group(P)
    assert len(auts) == expected
    # closed under composition and inverses
    s = set(auts)
    for a in auts:
        assert invert_perm(a) in s
        for b in auts:
            assert compose(a, b) in s


def test_realized_dihedral_group():
    G, p = load_profile("dihedral3")
    assert p == 3 and G.order_P == 3 and G.r == 1 and G.k == 3
    t = G.element("t")
    q = G.element("q1")
    assert t.hvec == (1,)
    assert (t * t.inverse()).is_identity()
    # t q t^-1 = q^-1
    assert t.conjugate(q) in (q.inverse(), q) and not t.commutes_with(q)
    assert G.evaluate_word((("t", 1), ("t", -1))).is_identity()


def test_realized_element_hashable_and_matrix():
    G, _ = load_profile("dihedral3")
    t = G.element("t")
    assert len({t, G.element("t"), t * t}) == 2
    assert isinstance(t.matrix, Matrix)


def test_all_profiles_build_as_p_groups():
    for name, (_, p) in PROFILES.items():
        G, _ = load_profile(name)
        if p is not None:
            assert G.is_p_group(p), name


def test_order_six_kernel_rejected_for_p2():
    c6 = FiniteGroupTable.cyclic(6)
    with pytest.raises(HypothesisViolation) as exc:
        semidirect_group(c6, [tuple(range(6))], prime=2)
    assert exc.value.check == "p-group"


def test_infinite_kernel_rejected():
    # a generator with zero h-vector and infinite order matrix
    g = RealizedElement(Matrix([[1, 1], [0, 1]]), (0,))
    with pytest.raises((KernelNotFiniteError, MalformedInputError)):
        build_realized_group([RealizedElement(Matrix.identity(2), (1,))], [g], cap=16)


def test_unknown_profile():
    with pytest.raises(MalformedInputError):
        load_profile("nope")


def test_enumerate_ball():
    G, _ = load_profile("dihedral3")
    ball = enumerate_ball(G, 2)
    assert G.identity() in ball
    assert len(ball) > 3


# --- splitting -----------------------------------------------------------------------------

def test_dihedral_splitting_F_is_2Z():
    G, _ = load_profile("dihedral3")
    cert = splitting_subgroup(G)
    assert cert.F_basis == ((2,),) or list(map(tuple, cert.F_basis)) == [(2,)]
    assert cert.index == 2
    assert verify_certificate(G, cert)
    assert cert.section[0].matrix.is_identity()


def test_remark_fallback_bound():
    G, _ = load_profile("dihedral3")
    cert = remark_certificate(G)
    assert cert.aut_order == 2 and cert.index == 2
    assert verify_certificate(G, cert)


def test_z2_dihedral_index_two():
    G, _ = load_profile("z2_dihedral3")
    cert = splitting_subgroup(G)
    assert cert.index == 2
    assert verify_certificate(G, cert)


@pytest.mark.parametrize("name,index", [
    ("z", 1), ("z_klein4", 3), ("z_quaternion", 3), ("cyclic9", 1)])
def test_splitting_indices(name, index):
    G, _ = load_profile(name)
    cert = splitting_subgroup(G)
    assert cert.index == index
    verify_certificate(G, cert)


def test_broken_certificate_detected():
    G, _ = load_profile("dihedral3")
    cert = splitting_subgroup(G)
    t = G.element("t")
    bad = SplittingCertificate(cert.F_basis, (t * t * t,), cert.section_words, cert.index,
                               cert.coset_reps, cert.coset_words, cert.image_basis, "lemma")
    with pytest.raises(CertificateInvalidError):
        verify_certificate(G, bad)


@pytest.mark.parametrize("name", ["dihedral3", "z2_dihedral3", "z_klein4", "z_quaternion"])
def test_section_images_commute_with_each_other_and_P(name):
    G, _ = load_profile(name)
    cert = splitting_subgroup(G)
    for s in cert.section:
        for q in G.kernel_elements:
            assert s.commutes_with(q)
        for s2 in cert.section:
            assert s.commutes_with(s2)


@given(st.lists(st.tuples(st.sampled_from(["t1", "t2", "q1"]), st.sampled_from([1, -1])),
                max_size=8))
def test_decomposition_recovers_element(word):
    G, _ = _Z2D3
    cert = _Z2D3_CERT
    g = G.evaluate_word(tuple(word))
    c, qi, j = decompose(G, cert, g)
    back = (cert.psi(c) if c else G.identity()) * G.kernel_elements[qi] * cert.coset_reps[j]
    assert back == g


_Z2D3 = load_profile("z2_dihedral3")
_Z2D3_CERT = splitting_subgroup(_Z2D3[0])


# --- normal series ---------------------------------------------------------------------------

def test_d_zp_certificates():
    G, _ = load_profile("dihedral3")
    s = d_zp_certificate(G, 3)
    assert s.quotients[1:] == [(3,)]
    Q, _ = load_profile("z_quaternion")
    s = d_zp_certificate(Q, 2)
    assert s.quotients[1:] == [(2, 2), (2,)]
    with pytest.raises(CertificateInvalidError):
        d_zp_certificate(G, 2)
    assert d_zp_certificate(load_profile("z")[0], 2).length == 1
