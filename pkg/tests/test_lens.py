from fractions import Fraction
from math import floor

import pytest
from hypothesis import given, strategies as st

from knotconc.algebra.squares import is_prime
from knotconc.lens import (SignatureJumpError, exponent_to_r, independence_certificate,
                           infinite_order_certificate, lattice_count, lattice_sigma,
                           lens_signature, order_bound, seifert_metabolic_check, sigma_closed,
                           sigma_min, sigma_of_character, tristram_levine_signature)

KS = [k for k in range(1, 26) if is_prime(4 * k + 1)]
PRIMES = [m for m in range(13, 102) if is_prime(m)]
TREFOIL = [[-1, 1], [0, -1]]


def column_count(r, m):
    """
    Weighted count column by column.  m is odd and r < m, so the apex
    (r, 2r/m) is never a lattice point and the hypotenuse only meets the
    lattice at the origin.
    """
    total = Fraction(1, 4) + Fraction(floor(Fraction(2 * r, m)), 2)
    for x in range(1, r):
        total += Fraction(1, 2) + floor(Fraction(2 * x, m))
    return total


# -- lattice counts and closed forms -------------------------------------------


@pytest.mark.parametrize("k", KS)
def test_lattice_count_matches_column_count(k):
    m = 4 * k + 1
    for r in range(1, m):
        assert lattice_count(r, m) == column_count(r, m)


@pytest.mark.parametrize("k", KS)
def test_closed_form_matches_lattice(k):
    m = 4 * k + 1
    for r in range(1, m):
        assert sigma_closed(k, r) == lattice_sigma(k, r)


def test_sigma_examples():
    assert lattice_sigma(3, 3) == Fraction(-29, 13)
    assert lattice_sigma(3, 6) == Fraction(1, 13)
    assert lattice_sigma(3, 7) == Fraction(1, 13)
    assert lattice_sigma(3, 1) == Fraction(-9, 13)
    assert lens_signature(3, 6).to_json() == {"k": 3, "m": 13, "r": 6, "value": "1/13"}


@pytest.mark.parametrize("k", KS)
def test_extremes(k):
    m = 4 * k + 1
    values = [sigma_closed(k, r) for r in range(1, m)]
    assert min(values) == sigma_closed(k, k) == sigma_min(m)
    assert max(values) == Fraction(1, m)
    assert sigma_closed(k, (m - 1) // 2) == sigma_closed(k, (m + 1) // 2) == Fraction(1, m)


@pytest.mark.parametrize("k", KS)
def test_sigma_symmetric_under_inverse(k):
    # chi and its inverse give the same signature: r -> m - r
    m = 4 * k + 1
    for r in range(1, m):
        assert sigma_closed(k, r) == sigma_closed(k, m - r)


def test_domain_errors():
    with pytest.raises(ValueError):
        lattice_sigma(3, 0)
    with pytest.raises(ValueError):
        lattice_sigma(3, 13)
    with pytest.raises(ValueError):
        sigma_closed(2, 1)
    with pytest.raises(ValueError):
        exponent_to_r(3, 26)


def test_character_exponents():
    # chi^3 = chi^(2*8) mod 13
    assert exponent_to_r(3, 3) == 8
    assert sigma_of_character(3, 3) == Fraction(-17, 13)
    assert sigma_of_character(3, 6) == Fraction(-29, 13)
    for e in range(1, 13):
        assert 2 * exponent_to_r(3, e) % 13 == e


# -- infinite order ----------------------------------------------------------------


def test_bound_examples():
    cert = infinite_order_certificate(3, 2)
    assert cert.sigma1_tau_upper_bound == Fraction(-2, 13)
    assert cert.verdict == "infinite-order-evidence"
    assert sum(v for _, v in cert.chain[:-1]) == cert.chain[-1][1]
    over = infinite_order_certificate(1, 2, override=True)
    assert over.sigma1_tau_upper_bound == 2 and over.verdict == "inconclusive"


@pytest.mark.parametrize("k,n", [(1, 2), (2, 2), (3, 3), (3, 0), (5, 2)])
def test_bound_preconditions(k, n):
    with pytest.raises(ValueError):
        infinite_order_certificate(k, n)


@pytest.mark.parametrize("m", PRIMES)
def test_bound_negative_on_hypothesis_region(m):
    for n in range(2, 11, 2):
        b = order_bound(m, n)
        assert b < 0
        if m % 4 == 1:
            cert = infinite_order_certificate((m - 1) // 4, n)
            assert cert.sigma1_tau_upper_bound == b
            assert cert.verdict == "infinite-order-evidence"


@given(st.integers(3, 500), st.integers(1, 20))
def test_bound_formula(m, half):
    n = 2 * half
    direct = half * sigma_min(m) + Fraction(half, m) + n
    assert direct == order_bound(m, n)


# -- independence ------------------------------------------------------------------


def test_independence_examples():
    cert = independence_certificate([(3, 2), (4, 2)])
    assert cert.verdict == "not-slice" and cert.step == "signature-bound"
    assert cert.m1 == 13 and cert.reduced_bound == Fraction(-2, 13)
    cert = independence_certificate([(3, 1)])
    assert cert.verdict == "not-slice" and cert.step == "fox-milnor"
    with pytest.raises(ValueError):
        independence_certificate([(3, 2), (3, 2)])
    with pytest.raises(ValueError):
        independence_certificate([(2, 2)])
    with pytest.raises(ValueError):
        independence_certificate([])


def test_independence_order_of_pairs():
    a = independence_certificate([(4, 2), (3, 4)])
    b = independence_certificate([(3, 4), (4, 2)])
    assert a == b and a.m1 == 13


# -- Tristram-Levine -----------------------------------------------------------------


def test_trefoil_signature():
    assert tristram_levine_signature(TREFOIL, 2, 1) == -2
    assert tristram_levine_signature(TREFOIL, 7, 0) == 0
    assert tristram_levine_signature([], 5, 2) == 0


def test_jump_point():
    # zeros of t^2 - t + 1 are primitive sixth roots of unity
    with pytest.raises(SignatureJumpError):
        tristram_levine_signature(TREFOIL, 6, 1)


@pytest.mark.parametrize("d", range(2, 31))
def test_metabolic_form_vanishes(d):
    V = [[0, 1], [0, 0]]
    assert seifert_metabolic_check(V, [[1, 0]])
    for j in range(1, d):
        assert tristram_levine_signature(V, d, j) == 0


def test_signature_conjugation_symmetric():
    for d in (5, 7, 12):
        for j in range(1, d):
            try:
                a = tristram_levine_signature(TREFOIL, d, j)
            except SignatureJumpError:
                continue
            assert a == tristram_levine_signature(TREFOIL, d, d - j)


def test_twist_knot_signatures():
    # T_k with k > 0 is algebraically of order dividing 4 and has signature 0 at -1
    for k in range(1, 6):
        assert tristram_levine_signature([[-1, 1], [0, k]], 2, 1) == 0


def test_metabolic_check_errors():
    with pytest.raises(ValueError):
        seifert_metabolic_check([[0, 1], [0, 0]], [[1, 0], [0, 1]])
    assert not seifert_metabolic_check(TREFOIL, [[1, 0]])
