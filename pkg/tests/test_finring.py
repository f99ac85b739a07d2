import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from topring.finring import (
    AxiomError,
    RingMorphism,
    RingSpecError,
    additive_group,
    all_ideals,
    annihilator,
    boolean_ring,
    find_isomorphism,
    finite_nonfield_criterion,
    group_from_table,
    ideal_generate,
    ideal_power_chain,
    ideal_product,
    ideal_sum,
    idempotents,
    is_ideal,
    make_ring,
    maximal_ideals,
    product_ring,
    quotient_ring,
    ring_from_tables,
    ring_morphisms,
    unit_group_as_group,
    units_group,
    zerodivisors,
)
from topring.reports import HypothesisError


def units_oracle(n):
    return [a for a in range(n) if math.gcd(a, n) == 1]


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# -- construction -------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 7, 12, 30])
def test_zn_tables_are_modular_arithmetic(n):
    R = make_ring(f"Z/{n}")
    a = np.arange(n)
    assert (R.add_table == (a[:, None] + a[None, :]) % n).all()
    assert (R.mul_table == (a[:, None] * a[None, :]) % n).all()


def test_zero_ring_is_flagged():
    R = make_ring("Z/1")
    assert R.is_zero_ring and R.zero == R.one == 0
    with pytest.raises(HypothesisError):
        finite_nonfield_criterion(R)


def test_product_spec_and_isomorphisms():
    assert find_isomorphism(make_ring("Z/2 x Z/3"), make_ring("Z/6")) is not None
    assert find_isomorphism(make_ring("Z/2 x Z/2"), make_ring("Z/4")) is None
    P = product_ring(make_ring("Z/3"), make_ring("Z/4"))
    assert find_isomorphism(P, make_ring("Z/12")) is not None
    assert make_ring("Z/3 x Z/4").one == P.one


def test_polynomial_quotients():
    dual = make_ring("Z/2[x]/(0,0,1)")  # x^2 = 0
    assert dual.size == 4 and not dual.is_field
    assert dual.mul(2, 2) == 0  # x * x
    f4 = make_ring("Z/2[x]/(1,1,1)")  # x^2 = x + 1
    assert f4.is_field
    assert f4.mul(2, 2) == 3
    f9 = make_ring("Z/3[x]/(1,0,1)")  # x^2 = -1 is irreducible over Z/3
    assert f9.size == 9 and f9.is_field
    assert find_isomorphism(make_ring("Z/3[x]/(2,0,1)"), make_ring("Z/3 x Z/3")) is not None


@pytest.mark.parametrize(
    "spec",
    ["Z/0", "Z/x", "Z/4[x]/(1,1)", "Z/2[x]/(1,1,0)", "Z/2[x]/(1)", "Z/2 x ", "Q", "Z/300"],
)
def test_bad_specs(spec):
    with pytest.raises(RingSpecError):
        make_ring(spec)


@pytest.mark.parametrize(
    "add, mul, axiom",
    [
        ([[0, 1], [1, 0]], [[0, 0], [1, 1]], "multiplicative commutativity"),  # a*b = a
        ([[0, 1], [1, 1]], [[0, 0], [0, 1]], "additive inverse"),
        ([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [[0, 0, 0], [0, 1, 2], [0, 2, 2]], "distributivity"),
    ],
)
def test_axiom_checks_reject_bad_tables(add, mul, axiom):
    with pytest.raises(AxiomError) as err:
        ring_from_tables(add, mul)
    assert err.value.axiom == axiom


# -- units, zerodivisors, idempotents -------------------------------------------


def test_z12_tables():
    R = make_ring("Z/12")
    assert units_group(R).elements == (1, 5, 7, 11)
    assert zerodivisors(R) == (0, 2, 3, 4, 6, 8, 9, 10)
    assert idempotents(R) == (0, 1, 4, 9)


@given(st.integers(2, 80))
def test_units_and_zerodivisors_partition_zn(n):
    R = make_ring(f"Z/{n}")
    U = units_group(R)
    assert list(U.elements) == units_oracle(n)
    assert all(R.mul(a, U.inverse[a]) == 1 for a in U.elements)
    assert set(zerodivisors(R)) == set(range(n)) - set(U.elements)
    # idempotents of Z/n: 2^(number of prime factors)
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    assert len(idempotents(R)) == 2 ** len(primes)


@given(st.integers(2, 100))
def test_zerodivisor_bound_on_zn(n):
    report = finite_nonfield_criterion(make_ring(f"Z/{n}"))
    assert report.ok
    assert report.checks["finite_nonfield"] == (len(units_oracle(n)) != n - 1)


def test_bound_is_tight_on_z4():
    report = finite_nonfield_criterion(make_ring("Z/4"))
    assert report.details["zerodivisors"] == 2
    assert report.details["bound_tight"] is True


def test_bound_on_fields_records_no_bound():
    report = finite_nonfield_criterion(make_ring("Z/2[x]/(1,1,1)"))
    assert report.checks["equivalence"] and report.checks["bound"] is None


# -- ideals ---------------------------------------------------------------------


@given(st.integers(1, 60))
def test_ideals_of_zn_are_multiples_of_divisors(n):
    R = make_ring(f"Z/{n}")
    got = {J.elements for J in all_ideals(R)}
    expected = {tuple(range(0, n, d)) for d in divisors(n)}
    assert got == expected
    assert {M.elements for M in maximal_ideals(R)} == {
        tuple(range(0, n, p)) for p in divisors(n) if p > 1 and all(p % q for q in range(2, p))
    }


def test_ideal_operations_z12():
    R = make_ring("Z/12")
    I4, I6 = ideal_generate(R, [4]), ideal_generate(R, [6])
    assert I4.elements == (0, 4, 8)
    assert ideal_sum(I4, I6).elements == (0, 2, 4, 6, 8, 10)
    assert ideal_product(I4, I6).elements == (0,)
    assert annihilator(R, 6).elements == (0, 2, 4, 6, 8, 10)
    assert not is_ideal(R, [0, 1])
    assert I4.cosets() == [(0, 4, 8), (1, 5, 9), (2, 6, 10), (3, 7, 11)]


def test_power_chains():
    R = make_ring("Z/12")
    c6 = ideal_power_chain(R, ideal_generate(R, [6]))
    assert [J.elements for J in c6.chain] == [(0, 6), (0,)]
    assert c6.nilpotent and not c6.idempotent
    c4 = ideal_power_chain(R, ideal_generate(R, [4]))
    assert c4.idempotent and c4.stable.elements == (0, 4, 8)
    c2 = ideal_power_chain(R, ideal_generate(R, [2]))
    assert [J.elements for J in c2.chain] == [tuple(range(0, 12, 2)), (0, 4, 8)]
    assert c2.power(5).elements == (0, 4, 8)
    S = make_ring("Z/8")
    assert [J.elements for J in ideal_power_chain(S, ideal_generate(S, [2])).chain] == [
        (0, 2, 4, 6), (0, 4), (0,)
    ]


def test_power_chain_rejects_foreign_ideal():
    with pytest.raises(ValueError):
        ideal_power_chain(make_ring("Z/12"), ideal_generate(make_ring("Z/12"), [4]))


@given(st.integers(2, 48), st.data())
def test_stable_power_is_idempotent(n, data):
    R = make_ring(f"Z/{n}")
    J = data.draw(st.sampled_from(all_ideals(R)))
    chain = ideal_power_chain(R, J)
    assert ideal_product(chain.stable, chain.stable) == chain.stable
    for a, b in zip(chain.chain, chain.chain[1:]):
        assert set(b.elements) < set(a.elements)


# -- quotients, morphisms, groups ------------------------------------------------


def test_quotient_by_ideal():
    R = make_ring("Z/12")
    q, pi = quotient_ring(R, ideal_generate(R, [4]))
    assert q.size == 4
    assert find_isomorphism(q, make_ring("Z/4")) is not None
    assert pi.kernel.elements == (0, 4, 8)


@pytest.mark.parametrize("n, m, count", [(12, 4, 1), (12, 6, 1), (6, 4, 0), (4, 2, 1), (6, 1, 1)])
def test_morphism_counts_between_cyclic_rings(n, m, count):
    found = ring_morphisms(make_ring(f"Z/{n}"), make_ring(f"Z/{m}"))
    assert len(found) == count
    for f in found:
        assert f.map == tuple(a % m for a in range(n))


def test_morphism_verification():
    R, S = make_ring("Z/4"), make_ring("Z/2")
    with pytest.raises(AxiomError):
        RingMorphism(R, S, (0, 1, 1, 1)).verify()


def test_groups():
    G = unit_group_as_group(make_ring("Z/8"))
    assert G.labels == (1, 3, 5, 7)
    assert all(G.power(g, 2) == G.identity for g in range(4))
    assert len(G.subgroups()) == 5  # Klein four-group
    A = additive_group(make_ring("Z/6"))
    assert A.is_abelian and not A.is_simple
    assert additive_group(make_ring("Z/5")).is_simple
    with pytest.raises(ValueError):
        group_from_table([[0, 1], [1, 1]])


def test_s3_is_not_abelian_and_has_one_proper_normal_subgroup():
    import itertools

    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    op = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    G = group_from_table(op)
    assert not G.is_abelian
    normal = [H for H in G.subgroups() if G.is_normal(H)]
    assert len(normal) == 3
    assert len(G.subgroups()) == 6


def test_boolean_ring_of_z6():
    R = make_ring("Z/6")
    B = boolean_ring(R)
    assert B.elements == (0, 1, 3, 4)
    BR = B.as_ring()
    # every element squares to itself and doubles to zero
    assert all(BR.mul(e, e) == e and BR.add(e, e) == BR.zero for e in range(4))
    assert find_isomorphism(BR, make_ring("Z/2 x Z/2")) is not None
