import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from cginject.errors import (
    HypothesisViolation,
    MalformedInputError,
    PresentationSyntaxError,
    RelatorViolation,
)
from cginject.exact.laurent import LaurentPoly
from cginject.exact.linalg import determinant, matrix_rank
from cginject.complexes import homology_dims
from cginject.io import assignment_from_json, fixture_path, fixture_text, read_json
from cginject.knots import (
    absolute_complex,
    alexander_matrix,
    cg_lemma4_run,
    dihedral_assignment,
    fox_derivative,
    free_ring_add,
    free_ring_mul,
    parse_presentation,
    relative_complex,
    trivial_assignment,
    verify_rep,
)
from cginject.words import free_reduce

TREFOIL = parse_presentation(fixture_text("trefoil.txt"))
FIG8 = parse_presentation(fixture_text("figure_eight.txt"))
UNKNOT = parse_presentation(fixture_text("unknot.txt"))
HOPF = parse_presentation(fixture_text("hopf.txt"))
T = LaurentPoly.variable(0)


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * oracles.T ** e[0]
               for e, c in p.terms.items()) if p else sympy.Integer(0)


# --- parsing ---------------------------------------------------------------------------------

def test_parse_trefoil_one_line():
    pres = parse_presentation(
        "gens: x1 x2 x3 / rels: x1 x2 x1^-1 x3^-1, x2 x3 x2^-1 x1^-1 / meridian: x1")
    assert pres.generators == ("x1", "x2", "x3")
    assert len(pres.relators) == 2
    assert pres.meridian == "x1" and pres.r == 1
    assert parse_presentation(pres.text()) == pres


def test_parse_unknot():
    pres = parse_presentation("gens: x1 / rels: / meridian: x1")
    assert pres.relators == () and pres == UNKNOT


def test_parse_hopf_components():
    assert HOPF.r == 2 and HOPF.phi("y") == (0, 1)


def test_unbalanced_exponent_sum_rejected():
    with pytest.raises(MalformedInputError, match="abelianization"):
        parse_presentation("gens: x1 x2 / rels: x1 x2 x1 / meridian: x1")


@pytest.mark.parametrize("text,line,col", [
    ("gens: x1\nrels: x1 x9^-1\nmeridian: x1", 2, 10),
    ("gens: x1\nrels: x1^a\nmeridian: x1", 2, 7),
    ("oops gens: x1", 1, 1),
    ("gens: x1\nrels:\nmeridian: x2", 3, 11),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_missing_section():
    with pytest.raises(PresentationSyntaxError, match="meridian"):
        parse_presentation("gens: x1 / rels: ")


# --- Fox calculus ----------------------------------------------------------------------------

def test_fox_examples():
    x, y = "x", "y"
    assert fox_derivative((("x", 1),), x) == {(): 1}
    assert fox_derivative((("x", -1),), x) == {(("x", -1),): -1}
    assert fox_derivative((("x", 1), ("y", 1)), y) == {(("x", 1),): 1}
    assert fox_derivative((("x", 2),), x) == {(): 1, (("x", 1),): 1}
    assert fox_derivative((("y", 1),), x) == {}


words = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1, 2])), max_size=7).map(tuple)


def _word_elem(w):
    return {free_reduce(w): 1}


@given(words, words)
def test_fox_product_rule(u, v):
    for x in "abc":
        lhs = fox_derivative(u + v, x)
        rhs = free_ring_add(fox_derivative(u, x), free_ring_mul(_word_elem(u), fox_derivative(v, x)))
        assert lhs == rhs


@given(words)
def test_fox_fundamental_identity(w):
    total = {}
    for x in "abc":
        total = free_ring_add(total, free_ring_mul(fox_derivative(w, x),
                                                   free_ring_add({((x, 1),): 1}, {(): -1})))
    assert total == free_ring_add(_word_elem(w), {(): -1})


@given(words)
def test_fox_matches_oracle_after_abelianizing(w):
    for x in "abc":
        ours = sum(c * oracles.T ** sum(e for _, e in word) for word, c in fox_derivative(w, x).items())
        theirs = sum(c * oracles.T ** sum(e for _, e in pre) for c, pre in oracles.fox(w, x))
        assert sympy.simplify(ours - theirs) == 0


# --- Alexander polynomials --------------------------------------------------------------------

@pytest.mark.parametrize("pres,expected", [
    (TREFOIL, oracles.T ** 2 - oracles.T + 1),
    (FIG8, oracles.T ** 2 - 3 * oracles.T + 1),
])
def test_alexander_polynomials(pres, expected):
    det = determinant(alexander_matrix(pres))
    ours = oracles.normalize_univariate(to_sympy(det))
    assert sympy.expand(ours.as_expr() - expected) == 0
    assert oracles.normalize_univariate(oracles.alexander_polynomial(pres)) == ours


def test_trefoil_untwisted_relative_dims_zero():
    G, rep = verify_rep(TREFOIL, trivial_assignment(TREFOIL))
    assert homology_dims(relative_complex(TREFOIL, G), rep) == [0, 0, 0]
    assert alexander_matrix(TREFOIL).shape == (2, 2)


def test_unknot_relative_complex_empty():
    G, rep = verify_rep(UNKNOT, trivial_assignment(UNKNOT))
    C = relative_complex(UNKNOT, G)
    assert C.ranks == [0, 0, 0]
    assert homology_dims(C, ("fp", 2)) == [0, 0, 0]


def test_hopf_link_multivariable():
    G, rep = verify_rep(HOPF, trivial_assignment(HOPF))
    assert G.r == 2
    m = alexander_matrix(HOPF)
    assert m.shape == (1, 1) and matrix_rank(m) == 1
    x = LaurentPoly.variable(0, 2)
    entry = m[0, 0]
    assert entry == x - 1 or entry == 1 - x
    assert homology_dims(relative_complex(HOPF, G), rep) == [0, 0, 0]
    # the link group is Z^2 here, whose twisted homology over Q(x, y) vanishes
    assert homology_dims(absolute_complex(HOPF, G), rep) == [0, 0, 0]


# --- representations --------------------------------------------------------------------------

def test_dihedral_trefoil_assignment_valid():
    G, rep = verify_rep(TREFOIL, dihedral_assignment(TREFOIL, (0, 1, 2), 3), prime=3)
    assert G.order_P == 3


def test_trivial_assignment_trivial_P():
    G, _ = verify_rep(TREFOIL, trivial_assignment(TREFOIL))
    assert G.order_P == 1


def test_corrupted_assignment_names_relator():
    images = dihedral_assignment(TREFOIL, (0, 1, 2), 3)
    images["x3"] = images["x2"]
    with pytest.raises(RelatorViolation) as exc:
        verify_rep(TREFOIL, images)
    assert exc.value.relator == "x1 x2 x1^-1 x3^-1"


def test_bad_colouring_rejected():
    with pytest.raises(RelatorViolation):
        verify_rep(TREFOIL, dihedral_assignment(TREFOIL, (0, 1, 1), 3))


def test_twelve_element_P_rejected():
    images = assignment_from_json(read_json(fixture_path("trefoil_affine12.json")), TREFOIL)
    G, _ = verify_rep(TREFOIL, images)
    assert G.order_P == 12
    with pytest.raises(HypothesisViolation) as exc:
        cg_lemma4_run(TREFOIL, images, 3)
    assert exc.value.check == "p-group"


# --- finiteness runner vs. the coset-model oracle ---------------------------------------------

@pytest.mark.parametrize("pres,colors,n", [(TREFOIL, (0, 1, 2), 3), (FIG8, (0, 1, 3, 2), 5)])
def test_lemma4_matches_oracle(pres, colors, n):
    images = dihedral_assignment(pres, colors, n)
    report = cg_lemma4_run(pres, images, n)
    assert report.finite and report.fp_homology_circle
    assert report.raw_dims == [report.index * d for d in report.dims]
    assert report.dims == oracles.cover_homology_dims(pres, images)
    assert report.pipeline["ok"]


def test_lemma4_unknot():
    images = trivial_assignment(UNKNOT)
    report = cg_lemma4_run(UNKNOT, images, 2)
    assert report.finite and report.dims == [1, 0, 0]
    assert oracles.cover_homology_dims(UNKNOT, images) == [1, 0, 0]


def test_lemma4_rejects_links():
    with pytest.raises(MalformedInputError):
        cg_lemma4_run(HOPF, trivial_assignment(HOPF), 2)
