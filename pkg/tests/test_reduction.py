import json

import pytest

from arccount.canonical import canonical_encoding
from arccount.enumerate import enumerate_planar_spaces, labeled_spaces
from arccount.geometry import pgl_polynomial
from arccount.library import NAMED, h1, skew_lines_space
from arccount.polynomial import IntegerPolynomial, Q, Quasipolynomial, SymbolicCount, parity_indicator
from arccount.realize import count_strong
from arccount.reduction import (CHOICES, MissingClosedForm, NonIntegral, NotReducible, arc_count_formula,
                                arc_count_symbolic, formula_json, kaipa_check, kaipa_terms, mds_count,
                                mds_quasipolynomial, mu, mu_geometric, reduce_all, reducible_point,
                                substitute_closed_forms)
from arccount.spaces import PlanarSpace, is_valid, leq_bits, reducible_points

BASE = (Q ** 2 + Q + 1) * (Q ** 2 + 1) * (Q + 1) ** 2 * Q ** 6
A6_KEY = canonical_encoding(skew_lines_space())


def desc(*cs):
    return IntegerPolynomial.from_descending(cs)


# -- mu --------------------------------------------------------------------------------

def test_mu_free_point():
    f = PlanarSpace(5)
    g = PlanarSpace(4)
    assert mu(f, 4, g) == Q ** 3 + Q ** 2 + Q - 3


def test_mu_point_on_one_line():
    f = PlanarSpace(5, [(0, 1, 4)], [(0, 1, 2, 4), (0, 1, 3, 4)])
    g = PlanarSpace(4, [(0, 1, 2)], [(0, 1, 2, 3)])
    assert is_valid(f) and is_valid(g)
    assert f.point_index(4) == (2, 1)
    assert mu(f, 4, g) == Q - 2


def test_mu_two_lines_sharing_a_point():
    # point 4 is on lines {0,1,4} and {2,3,4} and on the plane through both
    f = PlanarSpace(5, [(0, 1, 4), (2, 3, 4)], [(0, 1, 2, 3, 4)])
    assert is_valid(f) and f.point_index(4) == (1, 2)
    g_meet = PlanarSpace(4, [(0, 1, 2)], [(0, 1, 2, 3)])
    assert mu(f, 4, g_meet) == 0
    g_free = PlanarSpace(4, [], [(0, 1, 2, 3)])
    assert mu(f, 4, g_free) == 1


def test_mu_rejects_unreducible_points():
    with pytest.raises(NotReducible):
        mu(skew_lines_space(), 0, skew_lines_space().delete_point(0))
    with pytest.raises(NotReducible):
        mu(h1(), 0, h1().delete_point(0))


@pytest.mark.parametrize("n", range(2, 8))
def test_mu_routes_agree(n):
    """The case split and the subspace-intersection count give the same polynomial."""
    for entry in enumerate_planar_spaces(n):
        f = entry.space
        for m in reducible_points(f):
            fp = f.delete_point(m)
            for g, _ in labeled_spaces(n - 1):
                if leq_bits(fp, g):
                    assert mu(f, m, g) == mu_geometric(f, m, g)


# -- reduction ---------------------------------------------------------------------------

def test_trivial_six_point_space():
    sc = reduce_all(6)[PlanarSpace(6).encoding]
    assert sc.base == desc(1, -9, 25, -16, -58, -32, -10, 82, 73, 41, -15, -66, -16, 0, 0, 0, 0, 0, 0)
    assert sc.atoms == {A6_KEY: IntegerPolynomial([40])}


def test_hyperfigurations_are_atoms():
    red = reduce_all(7)
    for e in enumerate_planar_spaces(7).hyperfigurations + enumerate_planar_spaces(6).hyperfigurations:
        assert red[e.encoding] == SymbolicCount.atom(e.encoding)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("q", [2, 3])
def test_reduction_matches_search(n, q):
    red = reduce_all(6)
    atoms = {A6_KEY: count_strong(skew_lines_space(), q)}
    for e in enumerate_planar_spaces(n):
        assert red[e.encoding].evaluate(q, atoms) == count_strong(e.space, q)


@pytest.mark.parametrize("choice", CHOICES)
def test_choice_of_removed_point_is_irrelevant_up_to_six(choice):
    ref = reduce_all(6)
    other = reduce_all(6, choice)
    assert all(other[k] == ref[k] for k in ref.counts)


def test_choice_changes_only_the_split_at_seven():
    low = arc_count_symbolic(7)
    alt = reduce_all(7, "lowest")[PlanarSpace(7).encoding]
    assert substitute_closed_forms(alt) == substitute_closed_forms(low)


def test_reducible_point_choices():
    f = PlanarSpace(5, [(0, 1, 2)], [(0, 1, 2, 3), (0, 1, 2, 4)])
    assert reducible_point(f, "lowest") == 0
    assert reducible_point(f, "highest") == 4
    assert reducible_point(f, "busiest") == 0
    with pytest.raises(NotReducible):
        reducible_point(skew_lines_space())
    with pytest.raises(ValueError):
        reduce_all(4, "random")


def test_small_arc_counts():
    assert arc_count_symbolic(4).base == BASE
    assert arc_count_symbolic(4).atoms == {}
    assert arc_count_symbolic(5).base == pgl_polynomial(4)


def test_seven_point_decomposition():
    sc = arc_count_symbolic(7)
    key = {canonical_encoding(NAMED[k]()): k for k in NAMED}
    named = {key[k]: v for k, v in sc.atoms.items()}
    assert named == {
        "A6": desc(595, -8260, 20160, -8820),
        "h1": IntegerPolynomial([210]), "h2": IntegerPolynomial([180]),
        "h3": IntegerPolynomial([-2520]), "h5": IntegerPolynomial([3780]),
    }
    assert sc.base == desc(1, -28, 322, -1925, 5571, 839, -18320, -2695, 7455, 19111, 17074, -9540,
                           -13027, -19922, 924, 14160, 0, 0, 0, 0, 0, 0)


def test_substituted_formulas():
    a = parity_indicator()
    P = Quasipolynomial.polynomial
    assert arc_count_formula(4) == P(BASE)
    assert arc_count_formula(5) == P(BASE * (Q - 1) ** 3)
    six = arc_count_formula(6)
    assert six == P(BASE * (Q - 1) ** 3 * (Q - 2) * (Q - 3) * (Q - 4))
    bracket = P(desc(1, -28, 323, -1952, 6462, -11004, 7470)) - 30 * a
    seven = arc_count_formula(7)
    assert seven == P(BASE * (Q - 1) ** 3) * bracket
    assert seven.modulus == 2
    assert seven(2) == 0
    assert seven(7) == 120 * pgl_polynomial(4)(7)


def test_missing_closed_form():
    sc = SymbolicCount(Q, {"n=8;L=;H=made-up": 1, A6_KEY: 2})
    with pytest.raises(MissingClosedForm) as err:
        substitute_closed_forms(sc)
    assert err.value.atoms == ["n=8;L=;H=made-up"]


def test_closed_form_atoms_cover_seven_points():
    seven = {e.encoding for e in enumerate_planar_spaces(7).hyperfigurations}
    assert seven <= {canonical_encoding(NAMED[k]()) for k in NAMED}


# -- MDS and leading terms --------------------------------------------------------------------

def test_mds_examples():
    assert mds_quasipolynomial(5) == Quasipolynomial.polynomial((Q - 1) ** 5)
    assert mds_count(4, 4, 2) == 1
    assert mds_count(6, 4, 4) == 0
    with pytest.raises(NonIntegral):
        mds_count(5, 4, 3, arcs=7)


def test_mds_other_k_needs_counts():
    with pytest.raises(ValueError):
        mds_count(5, 3, 3)
    # (q-1)^n C_{n,3} / |PGL_3| with four points in general position in a plane
    assert mds_count(4, 3, 3, arcs=pgl_polynomial(3)(3)) == 2 ** 4


@pytest.mark.parametrize("n,Nn,b2", [(6, 9, 26), (7, 28, 323)])
def test_kaipa_terms(n, Nn, b2):
    t = kaipa_terms(n, 4)
    assert (t.N - t.n, t.b2) == (Nn, b2)
    check = kaipa_check(n)
    assert check.passed and not check.skipped


def test_kaipa_degenerate_and_errors():
    t = kaipa_terms(5, 4)
    assert (t.N, t.delta) == (5, 4)
    check = kaipa_check(5)
    assert check.passed and check.skipped
    assert check.quotients == (IntegerPolynomial([1]),)
    with pytest.raises(ValueError):
        kaipa_terms(4, 4)


@pytest.mark.parametrize("n,k", [(n, k) for k in range(3, 7) for n in range(k + 1, 12)])
def test_kaipa_b2_is_integral(n, k):
    kaipa_terms(n, k)


# -- interchange ---------------------------------------------------------------------------------

def test_formula_json_uses_decimal_strings():
    data = formula_json(7)
    assert data["n"] == 7 and data["k"] == 4
    assert all(isinstance(c, str) for c in data["base"])
    assert all(isinstance(c, str) for a in data["atoms"] for c in a["coeff"])
    assert data["substituted"]["modulus"] == 2
    assert "warning" not in data
    again = json.loads(json.dumps(data))
    assert again == data


def test_formula_json_six():
    data = formula_json(6)
    branches = data["substituted"]["branches"]
    assert len(branches) == 1
    expected = BASE * (Q - 1) ** 3 * (Q - 2) * (Q - 3) * (Q - 4)
    assert IntegerPolynomial(int(c) for c in branches[0]) == expected
