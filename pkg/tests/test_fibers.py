"""Tests for fibers, generator tables, Hilbert values, and h-polynomials."""

import math
import random
from itertools import combinations_with_replacement

import pytest

from veroproj.errors import GuardExceeded
from veroproj.fibers import (
    Factorization,
    fiber_of,
    fibers_of_degree,
    first_disconnected_fiber,
    h_polynomial,
    hilbert_function,
    hilbert_values,
    ik_sequence_witness,
    is_2_normal,
    is_product_of_two,
    minimal_generator_table,
)
from veroproj.groups import h_vector_group, invariants_of_degree, parse_group
from veroproj.monomials import Monomial, MonomialSet, enumerate_degree, enumerate_support_bounded


def escalating_family(d: int) -> MonomialSet:
    # pure powers, the near-power x0^{d-1}x1, and the ladder
    # x0^k x1^{d-2k} x2^k; its toric ideal needs a generator of degree d
    members = [(d, 0, 0), (0, d, 0), (0, 0, d), (d - 1, 1, 0)]
    members.extend((k, d - 2 * k, k) for k in range(1, d // 2 + 1))
    return MonomialSet(members)


def test_factorization():
    omega = escalating_family(4)
    f = Factorization.of(omega, (3, 1))
    assert f.indices == (1, 3)
    assert f.degree == 2
    assert f.product == omega[1] * omega[3]
    with pytest.raises(ValueError):
        Factorization.of(omega, (0, 6))


def test_fibers_partition():
    omega = escalating_family(4)
    for k in (1, 2, 3):
        fib_map = fibers_of_degree(omega, k)
        total = sum(len(f) for f in fib_map.values())
        assert total == math.comb(len(omega) + k - 1, k)
        for target, fib in fib_map.items():
            for elem in fib.elements:
                assert Factorization.of(omega, elem).product == target


def test_fiber_of_matches_global_enumeration():
    rng = random.Random(3)
    for _ in range(6):
        n = rng.randint(1, 3)
        d = rng.randint(2, 4)
        pool = enumerate_degree(n, d)
        omega = MonomialSet(rng.sample(pool, rng.randint(2, min(7, len(pool)))))
        k = rng.randint(2, 3)
        fib_map = fibers_of_degree(omega, k)
        for target, fib in list(fib_map.items())[:10]:
            assert fiber_of(omega, target).elements == fib.elements


def test_guard_trips_with_exact_count():
    omega = MonomialSet.full(2, 3)
    with pytest.raises(GuardExceeded) as exc:
        fibers_of_degree(omega, 5, guard=100)
    assert exc.value.count == math.comb(len(omega) + 4, 5)


def test_escalating_generator_tables():
    expected = {
        4: {2: 2, 4: 1},
        5: {2: 1, 3: 2, 5: 1},
        6: {2: 4, 6: 1},
    }
    for d, table in expected.items():
        got = minimal_generator_table(escalating_family(d), k_max=d + 1)
        assert got.degrees == table, f"d={d}: {got.degrees} != {table}"
        assert got.bound == "user"
        q = got.quadraticity()
        assert q.status == "no" and q.witness_degree == min(k for k in table if k > 2)


def test_generator_count_degree2_oracle():
    # degree-2 count must equal (pairs) - (distinct pair products)
    rng = random.Random(17)
    for _ in range(10):
        n = rng.randint(1, 3)
        d = rng.randint(2, 4)
        pool = enumerate_degree(n, d)
        omega = MonomialSet(rng.sample(pool, rng.randint(2, min(9, len(pool)))))
        mu = len(omega)
        products = {
            tuple(a + b for a, b in zip(omega[i], omega[j]))
            for i in range(mu)
            for j in range(i, mu)
        }
        expected2 = math.comb(mu + 1, 2) - len(products)
        table = minimal_generator_table(omega, k_max=2)
        assert table.degrees.get(2, 0) == expected2


def test_complement_quartic_table():
    omega = MonomialSet.full(2, 4).remove((2, 2, 0))
    table = minimal_generator_table(omega, k_max=3)
    assert table.degrees == {2: 60, 3: 3}


def test_representatives():
    omega = escalating_family(4)
    table = minimal_generator_table(omega, k_max=4, representatives=True)
    assert set(table.representatives) == {2, 4}
    for k, pairs in table.representatives.items():
        assert len(pairs) == table.degrees[k]
        for lhs, rhs in pairs:
            fl = Factorization.of(omega, lhs)
            fr = Factorization.of(omega, rhs)
            assert fl.product == fr.product
            assert len(lhs) == len(rhs) == k
    js = table.to_json_dict()
    assert js["degrees"] == {"2": 2, "4": 1}
    assert js["bound"] == "user"
    assert "representatives" in js


def test_bound_resolution():
    omega = MonomialSet.full(2, 2)
    t = minimal_generator_table(omega)  # full Veronese is 2-normal
    assert t.bound == "two-normal" and t.verified_up_to == 3
    g = parse_group("C(4;0,1,2,3)")
    b1 = invariants_of_degree(g, 1)
    t2 = minimal_generator_table(b1)
    assert t2.bound == "group" and t2.verified_up_to == 3
    bad = escalating_family(4)
    with pytest.raises(ValueError, match="no completeness bound"):
        minimal_generator_table(bad)
    with pytest.raises(ValueError, match="not 2-normal"):
        minimal_generator_table(bad, bound="two-normal")
    with pytest.raises(ValueError, match="no origin group"):
        minimal_generator_table(bad, bound="group")
    with pytest.raises(ValueError, match="explicit k_max"):
        minimal_generator_table(bad, bound="user")


def test_hilbert_values_against_bruteforce():
    rng = random.Random(23)
    for _ in range(8):
        n = rng.randint(1, 3)
        d = rng.randint(1, 4)
        pool = enumerate_degree(n, d)
        omega = MonomialSet(rng.sample(pool, rng.randint(1, min(6, len(pool)))))
        values = hilbert_values(omega, 3)
        assert values[0] == 1 and values[1] == len(omega)
        for k in (2, 3):
            brute = {
                tuple(sum(col) for col in zip(*combo))
                for combo in combinations_with_replacement(list(omega), k)
            }
            assert values[k] == len(brute)
            assert hilbert_function(omega, k) == len(brute)


def test_is_2_normal():
    ok, witness = is_2_normal(MonomialSet.full(2, 3))
    assert ok and witness is None
    omega = MonomialSet(enumerate_support_bounded(3, 5, 2))
    ok, witness = is_2_normal(omega)
    assert not ok
    # oracle: recompute the missing set from scratch
    products = {
        tuple(a + b for a, b in zip(u, v))
        for u in omega
        for v in omega
    }
    missing = [tuple(m) for m in enumerate_degree(3, 10) if tuple(m) not in products]
    assert tuple(witness) == min(missing) == (1, 1, 1, 7)
    # the classical illustration is a witness too, just not the least one
    assert (2, 2, 2, 4) in set(missing)
    assert not is_product_of_two(omega, (2, 2, 2, 4))
    assert is_product_of_two(omega, (10, 0, 0, 0))


def test_complement_of_single_monomial_2_normality():
    # dropping one non-pure-power keeps 2-normality except for the
    # near-powers x_i^{d-1}x_j: their shadow x_i^{2d-1}x_j factors only
    # through the removed monomial
    for n, d in [(2, 4), (2, 5), (3, 3)]:
        full = MonomialSet.full(n, d)
        for m in full:
            if len(m.support()) < 2:
                continue
            omega = full.remove(m)
            ok, witness = is_2_normal(omega)
            near_power = max(m) == d - 1 and len(m.support()) == 2
            assert ok == (not near_power), (n, d, tuple(m))
            if near_power:
                i = max(range(n + 1), key=lambda p: m[p])
                shadow = tuple(e + (d if p == i else 0) for p, e in enumerate(m))
                assert not is_product_of_two(omega, shadow)
                assert hilbert_function(omega, 2) < math.comb(n + 2 * d, n)
            else:
                assert witness is None
                for k in (2, 3):
                    assert hilbert_function(omega, k) == math.comb(n + k * d, n)


def test_ik_sequence_witness():
    omega = escalating_family(4)
    # members in canonical order: (4,0,0) (3,1,0) (2,0,2) (1,2,1) (0,4,0) (0,0,4)
    # m0 * m5 = m2^2 is a pure degree-2 collision: never connected
    assert ik_sequence_witness(omega, (0, 5), (2, 2)) is None
    assert ik_sequence_witness(omega, (0, 5), (0, 5)) == [(0, 5)]
    with pytest.raises(ValueError, match="different products"):
        ik_sequence_witness(omega, (0, 1), (2, 2))
    # inside one fiber of degree 3 the chain exists when a component holds both
    fib_map = fibers_of_degree(omega, 3)
    for fib in fib_map.values():
        for comp in fib.connected_components():
            if len(comp) >= 2:
                chain = ik_sequence_witness(omega, comp[0], comp[-1])
                assert chain is not None
                assert chain[0] == comp[0] and chain[-1] == comp[-1]
                for a, b in zip(chain, chain[1:]):
                    assert set(a) & set(b)
                return
    raise AssertionError("no multi-element component found to exercise the chain")


def test_first_disconnected_fiber():
    omega = escalating_family(4)
    fib = first_disconnected_fiber(omega, 2)
    assert fib is not None and len(fib) >= 2
    # the degree-4 generator shows up as a disconnected degree-4 fiber
    fib4 = first_disconnected_fiber(omega, 4)
    assert fib4 is not None


def test_h_polynomial_group_route():
    g = parse_group("C(4;0,1,2,3)")
    b1 = invariants_of_degree(g, 1)
    hp = h_polynomial(b1)
    assert hp == (1, 6, 9, 0)
    # the series route and the direct invariant count agree
    assert hp == h_vector_group(g).h


def test_h_polynomial_veronese():
    omega = MonomialSet.full(2, 2)
    # second Veronese of the plane has h-vector (1, 3, 0)
    assert h_polynomial(omega) == (1, 3, 0)


def test_h_polynomial_errors():
    omega = MonomialSet.full(2, 2).remove((2, 0, 0))
    with pytest.raises(ValueError, match="pure powers"):
        h_polynomial(omega)
    g = parse_group("C(4;0,1,2,3)")
    b1 = invariants_of_degree(g, 1)
    with pytest.raises(ValueError, match="insufficient"):
        h_polynomial(b1, k_max=3)
