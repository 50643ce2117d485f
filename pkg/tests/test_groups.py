"""Tests for diagonal group presentations, invariants, and surface criteria."""

import itertools
import math
import random

import pytest

from veroproj.groups import (
    CyclicFactor,
    DiagonalGroup,
    block_group,
    count_invariants,
    cyclic_group,
    h_vector_group,
    invariants_of_degree,
    lambda_decomposition,
    parse_group,
    surface_koszul,
    surface_normal_form,
    surface_quadraticity,
    triple_projections,
)
from veroproj.errors import SpecParseError
from veroproj.monomials import enumerate_degree, multiply

# invariant monomials of the order-4 cyclic action with weights (0,1,2,3),
# in degrees 4 and 8, from the worked example these tests freeze
B1_0123 = {
    (4, 0, 0, 0), (0, 4, 0, 0), (0, 0, 4, 0), (0, 0, 0, 4),
    (2, 1, 0, 1), (1, 2, 1, 0), (0, 1, 2, 1), (1, 0, 1, 2),
    (2, 0, 2, 0), (0, 2, 0, 2),
}
B2_0123 = {
    (8, 0, 0, 0), (0, 8, 0, 0), (1, 6, 1, 0), (2, 4, 2, 0), (3, 2, 3, 0),
    (4, 0, 4, 0), (2, 5, 0, 1), (3, 3, 1, 1), (4, 1, 2, 1), (4, 2, 0, 2),
    (5, 0, 1, 2), (0, 0, 8, 0), (0, 1, 6, 1), (0, 2, 4, 2), (1, 0, 5, 2),
    (0, 3, 2, 3), (1, 1, 3, 3), (0, 4, 0, 4), (1, 2, 1, 4), (2, 0, 2, 4),
    (2, 1, 0, 5), (0, 0, 0, 8),
}


def test_parse_and_format():
    g = parse_group("C(4; 0,1,2,3)")
    assert g.spec_string() == "C(4;0,1,2,3)"
    assert g.order == 4 and g.n == 3
    two = parse_group("C(2;0,1,1) + C(4;0,2,3)")
    assert two.spec_string() == "C(2;0,1,1)+C(4;0,2,3)"
    assert two.order == 8
    with pytest.raises(SpecParseError):
        parse_group("D(4;0,1)")
    with pytest.raises(SpecParseError):
        parse_group("C(4: 0,1)")
    with pytest.raises(SpecParseError):
        parse_group("C(4; 0,x)")
    with pytest.raises(SpecParseError):
        parse_group("C(zero; 0,1)")


def test_weights_reduced_and_warnings():
    f = CyclicFactor(4, (5, -1, 2, 3))
    assert f.weights == (1, 3, 2, 3)
    g = parse_group("C(6;2,2,2)")
    assert g.factors[0].effective_order == 3
    assert any("effective order 3" in w for w in g.warnings)
    trivial = parse_group("C(2;0,0,0)")
    assert trivial.factors[0].effective_order == 1
    assert trivial.warnings
    with pytest.raises(ValueError):
        parse_group("C(2;0,0,0)", strict=True)
    chain = DiagonalGroup([CyclicFactor(3, (0, 1, 2)), CyclicFactor(2, (0, 1, 1))])
    assert any("chain" in w for w in chain.warnings)
    clean = parse_group("C(4;0,1,2,3)")
    assert clean.warnings == ()


def test_invariants_quartic_group_verbatim():
    g = parse_group("C(4;0,1,2,3)")
    b1 = invariants_of_degree(g, 1)
    assert {tuple(m) for m in b1} == B1_0123
    assert b1.origin_group == g and b1.origin_t == 1
    b2 = invariants_of_degree(g, 2)
    assert {tuple(m) for m in b2} == B2_0123
    assert len(b2) == 22
    # the scaled slice sits inside the plain invariants of that degree
    assert all(g.is_invariant(m) for m in b2)
    assert (4, 4, 0, 0) not in {tuple(m) for m in b2}
    assert g.is_invariant((4, 4, 0, 0))


def test_invariants_match_bruteforce():
    rng = random.Random(99)
    for _ in range(12):
        nv = rng.randint(1, 4)
        nfac = rng.randint(1, 2)
        factors = [
            CyclicFactor(rng.randint(1, 6), tuple(rng.randint(0, 9) for _ in range(nv)))
            for _ in range(nfac)
        ]
        g = DiagonalGroup(factors)
        t = rng.randint(1, 2)
        if g.order ** t > 40:
            continue
        degree = t * g.order
        brute = {
            tuple(m)
            for m in enumerate_degree(nv - 1, degree)
            if all(
                sum(w * e for w, e in zip(f.weights, m)) % (t * f.order) == 0
                for f in g.factors
            )
        }
        assert {tuple(m) for m in invariants_of_degree(g, t)} == brute
        # capped count uses the plain congruence, so filter by is_invariant
        cap = rng.randint(1, degree)
        capped = sum(
            1
            for m in enumerate_degree(nv - 1, degree)
            if g.is_invariant(m) and all(e <= cap for e in m)
        )
        assert count_invariants(g, degree, cap=cap) == capped


def test_products_of_invariants_stay_invariant():
    g = parse_group("C(4;0,1,2,3)")
    b1 = invariants_of_degree(g, 1)
    for a, b in itertools.combinations_with_replacement(b1, 2):
        assert g.is_invariant(multiply(a, b))


def test_pure_powers_always_invariant():
    g = parse_group("C(5;0,2,3)+C(2;1,1,0)")
    b1 = invariants_of_degree(g, 1)
    d = g.order
    for i in range(3):
        pure = [0, 0, 0]
        pure[i] = d
        assert tuple(pure) in {tuple(m) for m in b1}


def test_surface_normal_form():
    assert surface_normal_form(cyclic_group(4, (1, 2, 0))) == (4, (0, 1, 3))
    assert surface_normal_form(cyclic_group(6, (2, 2, 2))) == (6, (0, 0, 0))
    with pytest.raises(ValueError):
        surface_normal_form(parse_group("C(4;0,1,2,3)"))


def test_lambda_decomposition_worked_examples():
    # (d; 0,1,3): a1'=1, d'=6, lam=3, product 1*3*2=6 -> quadratic
    assert lambda_decomposition(6, 1, 3) == (1, 6, 3, 0, 6)
    # (d; 0,1,2): product 1 -> not quadratic
    assert lambda_decomposition(5, 1, 2) == (1, 5, 2, 0, 1)
    # (d; 0,2,3): gcd(2,6)=2 already certifies; lam lands at d'=3
    assert lambda_decomposition(6, 2, 3) == (1, 3, 3, 0, 6)


def test_lambda_decomposition_against_bruteforce():
    rng = random.Random(5)
    for _ in range(200):
        d = rng.randint(2, 30)
        a1 = rng.randint(1, d - 1)
        a2 = rng.randint(a1, d - 1)
        a1p, dp, lam, mu, product = lambda_decomposition(d, a1, a2)
        g1 = math.gcd(a1, d)
        assert a1p == a1 // g1 and dp == d // g1
        assert 0 < lam <= dp
        assert a2 == lam * a1p + mu * dp
        # lam is the unique solution in (0, d']
        sols = [x for x in range(1, dp + 1) if (x * a1p - a2) % dp == 0]
        assert sols == [lam]
        assert product == g1 * math.gcd(lam, dp) * math.gcd(lam - g1, dp)


def test_surface_quadraticity_degenerate_cases():
    assert surface_quadraticity(cyclic_group(1, (0, 0, 0))).quadratic
    assert surface_quadraticity(cyclic_group(6, (2, 2, 2))).quadratic
    crit = surface_quadraticity(cyclic_group(5, (0, 0, 2)))
    assert crit.quadratic and crit.degenerate == "two-variable-action"


def test_surface_quadraticity_examples():
    assert surface_quadraticity(cyclic_group(6, (0, 1, 3))).quadratic
    assert not surface_quadraticity(cyclic_group(5, (0, 1, 2))).quadratic
    assert surface_quadraticity(cyclic_group(6, (0, 2, 3))).quadratic


def test_surface_koszul_routes():
    cyc = surface_koszul(cyclic_group(5, (0, 1, 2)))
    assert not cyc.koszul and cyc.route == "gcd-criterion"
    non = surface_koszul(parse_group("C(2;0,1,1)+C(4;0,2,3)"))
    assert non.koszul and non.route == "noncyclic-invariant"
    # abstractly cyclic two-factor presentation falls back to support-2
    sneaky = surface_koszul(parse_group("C(1;0,0,0)+C(5;0,1,2)"))
    assert sneaky.route == "support-2"
    assert not sneaky.koszul


def test_surface_koszul_agrees_with_support2():
    rng = random.Random(42)
    for _ in range(60):
        d = rng.randint(2, 12)
        a = rng.randint(0, d - 1)
        b = rng.randint(0, d - 1)
        g = cyclic_group(d, (0, a, b))
        verdict = surface_koszul(g)
        b1 = invariants_of_degree(g, 1)
        expected = any(len(m.support()) == 2 for m in b1)
        assert verdict.koszul == expected


def test_h_vector_quartic_group():
    g = parse_group("C(4;0,1,2,3)")
    hv = h_vector_group(g)
    # oracle: count invariant monomials of degree 4i with every exponent < 4
    brute = tuple(
        sum(
            1
            for m in enumerate_degree(3, 4 * i)
            if g.is_invariant(m) and all(e < 4 for e in m)
        )
        for i in range(4)
    )
    assert hv.h == brute == (1, 6, 9, 0)
    assert hv.regularity == 3


def test_h_vector_invariants():
    rng = random.Random(11)
    for _ in range(25):
        d = rng.randint(2, 9)
        n = rng.randint(2, 3)
        g = cyclic_group(d, tuple(rng.randint(0, d - 1) for _ in range(n + 1)))
        hv = h_vector_group(g)
        b1 = invariants_of_degree(g, 1)
        assert hv.h[0] == 1
        assert hv.h[1] == len(b1) - (n + 1)
        full_support = sum(1 for m in b1 if len(m.support()) == n + 1)
        assert hv.h[n] == full_support
        if n == 2:
            assert hv.h[2] <= hv.h[1]
        assert 1 <= hv.regularity <= n + 1


def test_triple_projections():
    g = parse_group("C(4;0,1,2,3)")
    trips = triple_projections(g)
    assert len(trips) == 4
    assert trips[0][0] == (0, 1, 2)
    assert trips[0][1].spec_string() == "C(4;0,1,2)"
    assert trips[-1][0] == (1, 2, 3)
    with pytest.raises(ValueError):
        triple_projections(cyclic_group(4, (0, 1, 2)))


def test_block_group():
    g = parse_group("C(6;0,1,3)")
    b = block_group(g, (2, 1, 2))
    assert b.spec_string() == "C(6;0,0,1,3,3)"
    assert b.order == 6
    with pytest.raises(ValueError):
        block_group(g, (2, 1))
    with pytest.raises(ValueError):
        block_group(g, (2, 0, 1))
