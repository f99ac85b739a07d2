import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topring import fintop as ft
from topring.bits import elements_of, mask_of
from topring.fintop import MapTable, Partition, TopologyError
from topring.reports import BudgetExceeded

ALL = {n: list(ft.enumerate_topologies(n)) for n in range(1, 5)}


def all_subsets(n):
    return range(1 << n)


def opens_by_brute(T):
    """Up-closed subsets of the specialization order, by definition."""
    return {S for S in all_subsets(T.n) if all(not (S >> x) & 1 or T.up[x] & ~S == 0 for x in range(T.n))}


def continuous_by_brute(f, TX, TY):
    opens_x = set(TX.opens)
    return all(f.preimage(V) in opens_x for V in TY.opens)


@st.composite
def topologies(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(ALL[n]))


# -- enumeration --------------------------------------------------------------


def test_counts_match_known_sequence():
    assert [ft.count_topologies(n) for n in range(1, 6)] == [1, 4, 29, 355, 6942]


def test_enumeration_agrees_with_family_filter():
    for n in (1, 2, 3):
        filt = ft.topologies_by_family_filter(n)
        assert len(filt) == [1, 4, 29][n - 1]
        assert {T.up for T in filt} == {T.up for T in ALL[n]}


def test_enumeration_has_no_duplicates_and_is_sorted():
    for n, tops in ALL.items():
        assert len({T.up for T in tops}) == len(tops)
        keys = [T.canonical_key for T in tops]
        assert keys == sorted(keys)


def test_homeomorphism_classes_match_known_counts():
    # topologies on n points up to homeomorphism: 1, 3, 9, 33
    for n, expected in zip((1, 2, 3, 4), (1, 3, 9, 33)):
        reps = []
        for T in ALL[n]:
            if not any(ft.is_homeomorphic(T, R)[0] for R in reps):
                reps.append(T)
        assert len(reps) == expected


def test_exhaustive_cap_requires_sampling():
    with pytest.raises(BudgetExceeded):
        list(ft.enumerate_topologies(7))
    sample = list(ft.enumerate_topologies(7, sample=5, seed=3))
    assert len(sample) == 5
    assert [T.up for T in sample] == [T.up for T in ft.enumerate_topologies(7, sample=5, seed=3)]


# -- construction -------------------------------------------------------------


@pytest.mark.parametrize(
    "opens, axiom",
    [
        ([[0], [0, 1]], "empty set missing"),
        ([[], [0]], "full set missing"),
        ([[], [0], [1]], "full set missing"),
        ([[], [0], [1], [0, 1, 2]], "union missing"),
        ([[], [0, 1], [1, 2], [0, 1, 2]], "intersection missing"),
        ([[], [3], [0, 1, 2]], "open set not inside the ground set"),
    ],
)
def test_make_topology_rejects(opens, axiom):
    with pytest.raises(TopologyError) as err:
        ft.make_topology(3, opens)
    assert err.value.axiom == axiom


def test_opens_are_up_closed_sets():
    for n in (1, 2, 3, 4):
        for T in ALL[n]:
            assert set(T.opens) == opens_by_brute(T)


def test_sierpinski_basics():
    S = ft.sierpinski()
    assert S.opens == (0, 0b01, 0b11)
    assert S.closure(0b01) == 0b11
    assert S.closure(0b10) == 0b10
    assert S.leq(1, 0) and not S.leq(0, 1)


def test_literal_round_trip():
    for T in ALL[3]:
        assert ft.from_literal(T.to_json()) == T
        assert ft.from_literal(T.compact_literal()) == T


def test_large_literal_falls_back_to_minimal_opens():
    D = ft.discrete(20)
    lit = D.to_literal()
    assert "up" in lit and "opens" not in lit
    assert ft.from_literal(json.dumps(lit)) == D


def test_from_up_masks_rejects_non_preorders():
    with pytest.raises(TopologyError):
        ft.from_up_masks(2, [0b10, 0b10])  # not reflexive
    with pytest.raises(TopologyError):
        ft.from_up_masks(3, [0b011, 0b110, 0b100])  # not transitive


# -- closure ------------------------------------------------------------------


@given(topologies())
def test_closure_interior_duality(T):
    for S in all_subsets(T.n):
        assert T.closure(S) == ft.closure_by_closed_sets(T, S)
        assert T.interior(S) == T.full & ~T.closure(T.full & ~S)


def test_closure_table_matches_closed_set_scan():
    for T in ALL[4]:
        table = ft.all_closures_by_closed_sets(T)
        assert [int(v) for v in table] == [ft.closure_by_closed_sets(T, S) for S in all_subsets(4)]


def test_closure_calculus_flags():
    T = ft.make_topology(3, [[], [0], [0, 1], [0, 1, 2]])
    data = ft.closure_calculus(T, [0])
    assert data.closure == (0, 1, 2) and data.is_dense
    assert data.isolated_points == (0,)


# -- derived spaces -------------------------------------------------------------


@settings(max_examples=40)
@given(topologies(3), topologies(3))
def test_product_matches_rectangle_base(T1, T2):
    P = ft.product_topology(T1, T2)
    assert P == ft._product_by_rectangles(T1, T2)
    m = T2.n
    for U in T1.opens:
        for V in T2.opens:
            rect = mask_of(a * m + b for a in elements_of(U) for b in elements_of(V))
            assert P.is_open(rect)


@given(topologies(), st.data())
def test_subspace_opens_are_traces(T, data):
    A = data.draw(st.integers(1, T.full))
    sub, pts = ft.subspace_topology(T, elements_of(A))
    traces = {mask_of(i for i, p in enumerate(pts) if (U >> p) & 1) for U in T.opens}
    assert set(sub.opens) == traces


@given(topologies(), st.data())
def test_quotient_opens_by_definition(T, data):
    labels = data.draw(st.lists(st.integers(0, T.n - 1), min_size=T.n, max_size=T.n))
    blocks = {}
    for x, b in enumerate(labels):
        blocks.setdefault(b, []).append(x)
    part = Partition.of(blocks.values(), T.n)
    Q = ft.quotient_topology(T, part)
    pi = part.projection()
    expected = {W for W in all_subsets(len(part.blocks)) if T.is_open(pi.preimage(W))}
    assert set(Q.opens) == expected


@given(topologies(), topologies(3), st.data())
def test_induced_topology_is_preimage_family(TY, TX, data):
    f = MapTable(TX.n, TY.n, tuple(data.draw(st.integers(0, TY.n - 1)) for _ in range(TX.n)))
    ind = ft.induced_topology(f, TY)
    assert set(ind.opens) == ft.induced_by_open_family(f, TY)


def test_continuity_is_monotonicity():
    for TX in ALL[2] + ALL[3]:
        for TY in ALL[2]:
            for table in itertools.product(range(TY.n), repeat=TX.n):
                f = MapTable(TX.n, TY.n, table)
                fast = ft.is_continuous(f, TX, TY)
                assert bool(fast) == continuous_by_brute(f, TX, TY) == bool(ft.is_continuous_by_opens(f, TX, TY))
                if not fast:
                    assert TY.is_open(mask_of(fast.witness_open))
                    assert not TX.is_open(mask_of(fast.witness_preimage))


def test_monotone_tables_agrees_with_product_continuity():
    for T in ALL[3]:
        TT = ft.product_topology(T, T)
        P, Q = ft.power_generators(T, 2)
        tables = np.array(list(itertools.product(range(3), repeat=9))[::37])
        fast = ft.monotone_tables(tables, P, Q, T)
        for row, ok in zip(tables, fast):
            assert ok == continuous_by_brute(MapTable(9, 3, tuple(int(v) for v in row)), TT, T)


def test_closed_and_open_maps_by_definition():
    for TX in ALL[3]:
        for TY in ALL[2]:
            for table in itertools.product(range(2), repeat=3):
                f = MapTable(3, 2, table)
                closed = all(TY.is_closed(f.image(C)) for C in TX.closed_sets)
                opened = all(TY.is_open(f.image(U)) for U in TX.opens)
                assert ft.is_closed_map(f, TX, TY) == closed
                assert ft.is_open_map(f, TX, TY) == opened


# -- components, sober space, predicates -------------------------------------------


def test_pi0_matches_separation_oracle():
    for n in (1, 2, 3, 4):
        for T in ALL[n]:
            part, _ = ft.pi0(T, crosscheck=False)
            assert part == ft.components_by_separation(T)


def test_sober_points_are_point_closures():
    for n in (1, 2, 3, 4):
        for T in ALL[n]:
            S = ft.sober_space(T, exhaustive=True)
            assert set(S.points) == set(T.down)
            assert S.points == ft.sober_space(T, exhaustive=False).points
            assert S.continuous
            assert set(S.topology.closed_sets) == ft.sober_closed_family(T, S)
            # t(X) is T0 and has one point per class of indistinguishable points
            assert S.topology.is_t0
            assert S.topology.n == len(set(T.up))


def test_t0_spaces_are_their_own_sober_space():
    for T in ALL[4]:
        if T.is_t0:
            S = ft.sober_space(T)
            ok, phi = ft.is_homeomorphic(T, S.topology)
            assert ok and ft.is_homeomorphism(phi, T, S.topology)


def test_hausdorff_means_discrete_on_finite_spaces():
    for n in (1, 2, 3, 4):
        for T in ALL[n]:
            assert ft.is_hausdorff(T) == T.is_discrete


@given(topologies(), st.permutations(range(4)))
def test_relabelled_spaces_are_homeomorphic(T, perm):
    perm = [p for p in perm if p < T.n]
    inv = {p: i for i, p in enumerate(perm)}
    up = tuple(mask_of(perm[y] for y in elements_of(T.up[inv[x]])) for x in range(T.n))
    T2 = ft.FinTopology(T.n, up)
    ok, phi = ft.is_homeomorphic(T, T2)
    assert ok and ft.is_homeomorphism(phi, T, T2)


def test_connected_subset():
    S = ft.sierpinski()
    assert ft.is_connected_subset(S, [0, 1])
    assert not ft.is_connected_subset(ft.discrete(3), [0, 2])
