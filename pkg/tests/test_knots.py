from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from knotconc.algebra.laurent import LaurentPolynomial
from knotconc.diagrams import (CrossingDiagram, twist_knot_fraction, two_bridge_diagram,
                               wirtinger_from_crossings)
from knotconc.groups import Presentation
from knotconc.knotfile import bundled_knot_files
from knotconc.knots import (Character, KnotDataError, KnotRecord, LinkedAbelianGroup,
                            alexander_from_presentation, alexander_from_seifert,
                            algebraic_order_of_twist_knot, branched_cover_homology,
                            character_from_element, integer_form, linking_form,
                            seifert_pairing, twist_knot_model, unknot)

from conftest import knot

t = LaurentPolynomial.t()
one = LaurentPolynomial.constant(1)


def integer_det(delta):
    return abs(integer_form(delta)(Fraction(-1)))


# -- Alexander polynomials ------------------------------------------------------


def test_trefoil_alexander():
    rec = knot("3_1.json")
    for route, p in rec.alexander_polynomials().items():
        assert p == (t * t - t + one).canonical(), route
    assert integer_form(rec.alexander()) == t * t - t + one


def test_zero_crossings_rejected():
    with pytest.raises(ValueError):
        CrossingDiagram(0, ())


def test_unknot():
    assert alexander_from_presentation(unknot().presentation) == one
    assert alexander_from_seifert([]) == one
    assert branched_cover_homology(unknot(), 2).is_trivial()
    assert branched_cover_homology(unknot(), 5).is_trivial()


def test_alexander_column_independence():
    for name in bundled_knot_files():
        rec = knot(name)
        for p in (rec.presentation, rec.diagram and wirtinger_from_crossings(rec.diagram)):
            if not p or p.generator_count > 12:
                continue
            polys = {alexander_from_presentation(p, column=j) for j in range(p.generator_count)}
            assert len(polys) == 1, name


def test_8_13_alexander():
    delta = knot("8_13.json").validate()
    assert integer_form(delta) == LaurentPolynomial.from_coeffs([2, -7, 11, -7, 2])
    assert integer_det(delta) == 29


@pytest.mark.parametrize("k", range(1, 51))
def test_twist_alexander(k):
    expected = LaurentPolynomial.from_coeffs([k, -(2 * k + 1), k])
    assert integer_form(alexander_from_seifert([[-1, 1], [0, k]])) == expected


def test_trefoil_seifert():
    assert alexander_from_seifert([[-1, 1], [0, -1]]) == (t * t - t + one)


def test_bad_seifert():
    with pytest.raises(KnotDataError):
        alexander_from_seifert([[1, 0], [0, 1]])


def test_records_disagreeing_routes_rejected():
    with pytest.raises(KnotDataError):
        KnotRecord("bad", presentation=knot("3_1.json").presentation,
                   seifert=((-1, 1), (0, 2))).validate()


# -- twist knots ------------------------------------------------------------------


def test_twist_models():
    rec, report = twist_knot_model(1)
    assert report["algebraic_order"] == 2 and report["determinant"] == 5
    assert twist_knot_model(2)[1]["algebraic_order"] == 1
    assert twist_knot_model(3)[1]["algebraic_order"] == 2
    rec.validate()
    with pytest.raises(ValueError):
        twist_knot_model(0)


def _sum_of_two_squares(n):
    return any(isqrt(n - a * a) ** 2 == n - a * a for a in range(isqrt(n) + 1))


@pytest.mark.parametrize("k", range(1, 200))
def test_algebraic_order_oracle(k):
    m = 4 * k + 1
    order = algebraic_order_of_twist_knot(k)
    if any(u * (u - 1) == k for u in range(k + 2)):
        assert order == 1
    elif _sum_of_two_squares(m):
        assert order == 2
    else:
        assert order == 4


@pytest.mark.parametrize("k", range(1, 8))
def test_twist_records_consistent(k):
    rec, _ = twist_knot_model(k)
    assert integer_det(rec.validate()) == 4 * k + 1
    p, q = twist_knot_fraction(k)
    assert p == 4 * k + 1 and rec.diagram == two_bridge_diagram(p, q)


# -- branched covers ---------------------------------------------------------------


def test_cover_order_is_determinant():
    for name in bundled_knot_files():
        rec = knot(name)
        d = integer_det(rec.alexander())
        routes = ["presentation"] + (["seifert"] if rec.seifert is not None else [])
        for route in routes:
            G = branched_cover_homology(rec, 2, route=route)
            assert G.order() == d, (name, route)


def test_known_cover_groups():
    assert branched_cover_homology(knot("8_13.json"), 2).orders == (29,)
    for k in range(1, 6):
        rec, _ = twist_knot_model(k)
        a = branched_cover_homology(rec, 2, route="seifert")
        b = branched_cover_homology(rec, 2, route="presentation")
        assert a.orders == b.orders == (4 * k + 1,)
    with pytest.raises(ValueError):
        branched_cover_homology(knot("3_1.json"), 3, route="seifert")


def test_three_fold_cover_of_8_13():
    G = branched_cover_homology(knot("8_13.json"), 3)
    assert G.order() == 256


# -- linking forms and characters ----------------------------------------------------


@pytest.mark.parametrize("k", range(1, 25))
def test_twist_linking_value(k):
    m = 4 * k + 1
    V = [[-1, 1], [0, k]]
    assert seifert_pairing(V, (1, 0), (1, 0)) == Fraction(-2 * k, m) % 1
    G = linking_form(V)
    assert G.orders == (m,)
    values = {G.pairing((u,), (u,)) for u in range(1, m)}
    assert Fraction(-2 * k, m) % 1 in values
    assert G.is_nonsingular()


@given(st.integers(1, 24), st.integers(0, 100), st.integers(0, 100))
def test_linking_symmetric(k, x, y):
    G = linking_form([[-1, 1], [0, k]])
    assert G.pairing((x,), (y,)) == G.pairing((y,), (x,))


def test_singular_form_detected():
    G = LinkedAbelianGroup((3, 3), ((Fraction(1, 3), 0), (0, 0)))
    assert not G.is_nonsingular()
    with pytest.raises(ValueError):
        LinkedAbelianGroup((3,), ((Fraction(1, 2),),))


def test_character_examples():
    G = linking_form([[-1, 1], [0, 3]])
    assert character_from_element(G, (0,), 13).is_trivial()
    assert character_from_element(G, (1,), 13).order() == 13
    G29 = LinkedAbelianGroup((29,), ((Fraction(1, 29),),))
    chi = character_from_element(G29, (1,), 29)
    assert chi.order() == 29 and chi.values == (1,)
    with pytest.raises(ValueError):
        character_from_element(G, (1,), 7)


@pytest.mark.parametrize("V", [[[-1, 1], [0, 1]], [[-1, 1], [0, 3]], [[-1, 1], [0, 6]],
                               [[-1, 1], [0, -1]]])
def test_characters_additive(V):
    G = linking_form(V)
    N = G.order()
    d = G.exponent()
    elems = list(G.elements())
    assert N <= 100
    for h1 in elems:
        c1 = character_from_element(G, h1, d)
        assert c1.is_trivial() == (not any(h1))
        for h2 in elems:
            c12 = character_from_element(G, G.add(h1, h2), d)
            c2 = character_from_element(G, h2, d)
            for x in elems:
                assert c12(x) == (c1(x) + c2(x)) % d


def test_character_validation():
    with pytest.raises(ValueError):
        Character(4, (1,), (3,))
    assert Character(6, (2,), (3,)).order() == 3


def test_direct_sum():
    G = linking_form([[-1, 1], [0, 3]])
    GG = G.direct_sum(G)
    assert GG.orders == (13, 13) and GG.is_nonsingular()
    assert GG.pairing((1, 0), (0, 1)) == 0


def test_presentation_needs_eta0_for_alexander():
    with pytest.raises(ValueError):
        alexander_from_presentation(Presentation.parse(2, ["x1 x2 x1 X2 X1 X2"]))
