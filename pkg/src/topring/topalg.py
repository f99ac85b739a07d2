"""Topological groups and rings on finite carriers, adic topologies, and
the theorem predicates checked over them.

Every predicate returns a Report. A check whose hypothesis fails is
recorded as ``hypothesis-unmet`` and nothing is asserted; a conclusion
that fails after its hypothesis held raises TheoremViolation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import fintop as ft
from .bits import elements_of, full_mask, mask_of, popcount
from .finring import (
    FiniteGroup,
    FiniteRing,
    Ideal,
    PowerChain,
    RingMorphism,
    additive_group,
    all_ideals,
    annihilator,
    boolean_ring,
    ideal_power_chain,
    is_ideal,
    maximal_ideals,
    unit_group_as_group,
    units_group,
    zerodivisors,
)
from .fintop import Continuity, FinTopology, MapTable, Partition
from .reports import (
    UNMET,
    BudgetExceeded,
    HypothesisError,
    Report,
    lookup_budget,
)

DEGENERATE = "degenerate-finite: every finite space is quasi-compact"


# -- k-ary continuity ---------------------------------------------------------


@lru_cache(maxsize=4096)
def _generators(up: tuple[int, ...], k: int) -> tuple[np.ndarray, np.ndarray]:
    return ft.power_generators(FinTopology(len(up), up), k)


def kary_continuity(table: Sequence[int], T: FinTopology, k: int, T_out: FinTopology | None = None) -> Continuity:
    """Continuity of f: T^k -> T_out given as a row-major value table."""
    T_out = T if T_out is None else T_out
    tab = np.asarray(table, dtype=np.int64)
    if tab.shape != (T.n**k,):
        raise ValueError("table does not match the product space")
    P, Q = _generators(T.up, k)
    if len(P) == 0:
        return Continuity(True)
    ok = T_out.leq_matrix[tab[P], tab[Q]]
    if ok.all():
        return Continuity(True)
    i = int(np.argmin(ok))
    V = T_out.up[int(tab[P[i]])]
    pre = [p for p in range(T.n**k) if (V >> int(tab[p])) & 1]
    return Continuity(False, elements_of(V), tuple(_unflatten(p, T.n, k) for p in pre))


def _unflatten(p: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(p % n)
        p //= n
    return tuple(reversed(out))


def _budget_check(size: int, arity: int) -> None:
    work = size ** (2 * arity)
    budget = lookup_budget()
    if work > budget:
        raise BudgetExceeded(f"{size}^{2 * arity} = {work} lookups exceeds the budget {budget}")


# -- topological groups -----------------------------------------------------


@dataclass
class TopGroup:
    group: FiniteGroup
    topology: FinTopology
    op_continuous: bool
    inverse_continuous: bool
    witnesses: dict = field(default_factory=dict)
    min_open_e: tuple[int, ...] = ()
    min_open_is_normal_subgroup: bool = False
    cosets_generate: bool = False

    @property
    def is_topological(self) -> bool:
        return self.op_continuous and self.inverse_continuous

    def to_dict(self) -> dict:
        return {
            "group": self.group.name,
            "topology": self.topology.to_literal(),
            "topological_group": self.is_topological,
            "op_continuous": self.op_continuous,
            "inverse_continuous": self.inverse_continuous,
            "witnesses": self.witnesses,
            "min_open_e": list(self.min_open_e),
            "min_open_is_normal_subgroup": self.min_open_is_normal_subgroup,
            "cosets_generate": self.cosets_generate,
        }


def check_topological_group(G: FiniteGroup, T: FinTopology) -> TopGroup:
    if G.size != T.n:
        raise ValueError("group and topology sizes differ")
    n = G.size
    op = kary_continuity([G.op[a][b] for a in range(n) for b in range(n)], T, 2)
    inv = kary_continuity(G.inverse, T, 1)
    witnesses = {}
    if not op:
        witnesses["op"] = {"open": list(op.witness_open), "preimage": [list(p) for p in op.witness_preimage]}
    if not inv:
        witnesses["inverse"] = {"open": list(inv.witness_open), "preimage": [p[0] for p in inv.witness_preimage]}
    N = T.up[G.identity]
    normal = G.is_normal(N)
    cosets = normal and all(T.up[x] == G.set_product(1 << x, N) for x in range(n))
    return TopGroup(G, T, bool(op), bool(inv), witnesses, elements_of(N), normal, cosets)


@dataclass
class TopRing:
    ring: FiniteRing
    topology: FinTopology
    add_continuous: bool
    mul_continuous: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_topological(self) -> bool:
        return self.add_continuous and self.mul_continuous

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.spec,
            "topology": self.topology.to_literal(),
            "topological_ring": self.is_topological,
            "add_continuous": self.add_continuous,
            "mul_continuous": self.mul_continuous,
            "witnesses": self.witnesses,
        }


def check_topological_ring(R: FiniteRing, T: FinTopology) -> TopRing:
    if R.size != T.n:
        raise ValueError("ring and topology sizes differ")
    add = kary_continuity(R.add_table.ravel(), T, 2)
    mul = kary_continuity(R.mul_table.ravel(), T, 2)
    witnesses = {}
    for name, c in (("add", add), ("mul", mul)):
        if not c:
            witnesses[name] = {"open": list(c.witness_open), "preimage": [list(p) for p in c.witness_preimage]}
    return TopRing(R, T, bool(add), bool(mul), witnesses)


def _require_topological_ring(R: FiniteRing, T: FinTopology) -> None:
    if not check_topological_ring(R, T).is_topological:
        raise HypothesisError(f"{R.spec} with this topology is not a topological ring")


def _require_topological_group(G: FiniteGroup, T: FinTopology) -> None:
    if not check_topological_group(G, T).is_topological:
        raise HypothesisError(f"{G.name} with this topology is not a topological group")


# -- adic topologies ----------------------------------------------------------


@dataclass
class AdicTopology:
    ring: FiniteRing
    ideal: Ideal
    chain: PowerChain
    topology: FinTopology
    report: Report | None = None

    @property
    def stable(self) -> Ideal:
        return self.chain.stable


def adic_up_masks(R: FiniteRing, stable: Ideal) -> tuple[int, ...]:
    return tuple(mask_of(R.plus[a][i] for i in stable) for a in range(R.size))


def adic_topology_from_base(R: FiniteRing, chain: PowerChain) -> FinTopology:
    """Generated by the base {a + I^n}: the smallest open around x is the
    intersection of all base sets containing it."""
    full = full_mask(R.size)
    up = [full] * R.size
    for k in range(1, chain.stable_index + 2):
        J = chain.power(k)
        for a in range(R.size):
            coset = mask_of(R.plus[a][i] for i in J)
            for x in elements_of(coset):
                up[x] &= coset
    return FinTopology(R.size, tuple(up))


def adic_topology(R: FiniteRing, I: Ideal) -> AdicTopology:
    """The I-adic topology: opens are unions of cosets of the stable power.

    Verifies that it is a topological ring whose unit group is a
    topological group, and that it is discrete exactly when I is nilpotent.
    """
    chain = ideal_power_chain(R, I)
    T = FinTopology(R.size, adic_up_masks(R, chain.stable))
    adic = AdicTopology(R, I, chain, T)
    report = Report("adic-absolute", details={"ring": R.spec, "ideal": list(I.elements)})
    report.require("base_construction_agrees", adic_topology_from_base(R, chain) == T)
    tr = check_topological_ring(R, T)
    report.require("topological_ring", tr.is_topological, tr.witnesses)
    if tr.is_topological:
        ab = absolute_check(R, T)
        report.require("absolute", ab.checks["units_topological_group"], ab.witness)
    isolated = any(u == 1 << x for x, u in enumerate(T.up))
    report.require("discrete_iff_nilpotent", T.is_discrete == chain.nilpotent)
    report.require("isolated_point_iff_discrete", isolated == T.is_discrete)
    adic.report = report.finish()
    return adic


# -- units ------------------------------------------------------------------


@dataclass
class UnitsTopologies:
    units: tuple[int, ...]
    group: FiniteGroup
    subspace: FinTopology
    tf: FinTopology


def _units_spaces(R: FiniteRing, T: FinTopology) -> UnitsTopologies:
    U = units_group(R)
    G = unit_group_as_group(R)
    sub, pts = ft.subspace_topology(T, U.elements)
    RR = ft.product_topology(T, T)
    f = MapTable(len(pts), R.size**2, tuple(a * R.size + U.inverse[a] for a in pts))
    tf = ft.induced_topology(f, RR)
    return UnitsTopologies(pts, G, sub, tf)


def units_topologies(R: FiniteRing, T: FinTopology) -> UnitsTopologies:
    """Subspace topology on R* and the one induced by a -> (a, a^-1)."""
    _require_topological_ring(R, T)
    ut = _units_spaces(R, T)
    report = Report("tf-topological-group", details={"ring": R.spec})
    # finer: every subspace-open set is tf-open, i.e. tf order inside subspace order
    report.require("tf_finer", all(ut.tf.up[x] & ~ut.subspace.up[x] == 0 for x in range(len(ut.units))))
    tg = check_topological_group(ut.group, ut.tf)
    report.require("tf_topological_group", tg.is_topological, tg.witnesses)
    report.finish()
    return ut


def absolute_check(R: FiniteRing, T: FinTopology) -> Report:
    """(a) inversion continuous on the unit subspace, (b) the unit subspace
    is a topological group, (c) the subspace topology equals the induced one.
    (b) and (c) must agree."""
    _require_topological_ring(R, T)
    ut = _units_spaces(R, T)
    tg = check_topological_group(ut.group, ut.subspace)
    report = Report("absolute-iff-tf", details={"ring": R.spec, "units": list(ut.units)})
    report.record("inverse_continuous", tg.inverse_continuous)
    report.record("units_topological_group", tg.is_topological)
    report.record("subspace_equals_tf", ut.subspace == ut.tf)
    report.record("op_continuous", tg.op_continuous)
    if not tg.is_topological:
        report.witness = {"units": list(ut.units), **tg.witnesses}
    report.require("group_iff_equal", tg.is_topological == (ut.subspace == ut.tf), tg.witnesses)
    report.require("tf_group", check_topological_group(ut.group, ut.tf).is_topological)
    return report.finish()


# -- polynomial and monomial maps --------------------------------------------


def _monomial_table(R: FiniteRing, exps: tuple[int, ...]) -> np.ndarray:
    n, k = R.size, len(exps)
    pw = np.array([[R.power(x, d) for x in range(n)] for d in range(max(exps) + 1)], dtype=np.int64)
    mul = R.mul_table
    out = np.full(n**k, R.one, dtype=np.int64)
    for pos, d in enumerate(exps):
        stride = n ** (k - 1 - pos)
        coord = (np.arange(n**k) // stride) % n
        out = mul[out, pw[d][coord]]
    return out


def polynomial_table(R: FiniteRing, poly: Mapping[tuple[int, ...], int], arity: int) -> np.ndarray:
    out = np.full(R.size**arity, R.zero, dtype=np.int64)
    for exps, c in poly.items():
        if len(exps) != arity or any(d < 0 for d in exps):
            raise ValueError(f"bad multi-index {exps} for arity {arity}")
        if not 0 <= c < R.size:
            raise IndexError(f"coefficient {c} out of range")
        out = R.add_table[out, R.mul_table[c, _monomial_table(R, exps)]]
    return out


def polynomial_continuity(R: FiniteRing, T: FinTopology, poly: Mapping[tuple[int, ...], int], arity: int) -> Report:
    """Continuity of the polynomial function R^arity -> R."""
    if arity < 1 or arity > 3:
        raise ValueError("arity must be 1, 2 or 3")
    _budget_check(R.size, arity)
    _require_topological_ring(R, T)
    c = kary_continuity(polynomial_table(R, poly, arity), T, arity)
    report = Report("polynomial-continuity", details={"ring": R.spec, "poly": {str(k): v for k, v in poly.items()}})
    report.require("continuous", bool(c), {"open": c.witness_open})
    return report.finish()


def monomial_table(G: FiniteGroup, exponents: Sequence[int], a: int) -> np.ndarray:
    n, k = G.size, len(exponents)
    op = np.array(G.op, dtype=np.int64)
    out = np.full(n**k, a, dtype=np.int64)
    for pos, d in enumerate(exponents):
        stride = n ** (k - 1 - pos)
        coord = (np.arange(n**k) // stride) % n
        pw = np.array([G.power(x, d) for x in range(n)], dtype=np.int64)
        out = op[out, pw[coord]]
    return out


def monomial_continuity(G: FiniteGroup, T: FinTopology, exponents: Sequence[int], a: int) -> Report:
    """Continuity of (x1..xk) -> a x1^d1 ... xk^dk."""
    k = len(exponents)
    if k < 1 or k > 3:
        raise ValueError("arity must be 1, 2 or 3")
    _budget_check(G.size, k)
    _require_topological_group(G, T)
    c = kary_continuity(monomial_table(G, exponents, a), T, k)
    report = Report("monomial-continuity", details={"group": G.name, "exponents": list(exponents), "a": a})
    report.require("continuous", bool(c), {"open": c.witness_open})
    return report.finish()


def _span(tables: np.ndarray, add: np.ndarray, mul: np.ndarray, size: int) -> np.ndarray:
    """Distinct functions sum(c_k t_k) over all coefficients c_k in R."""
    F = np.zeros((1, tables.shape[1]), dtype=add.dtype)
    scalars = np.arange(size)[:, None]
    for t in tables:
        scaled = mul[scalars, t[None, :]]
        F = np.unique(add[F[:, None, :], scaled[None, :, :]].reshape(-1, tables.shape[1]), axis=0)
    return F


def polynomial_sweep(R: FiniteRing, T: FinTopology, degree: int = 3, arity: int = 2, block_cells: int = 1 << 22) -> Report:
    """Every polynomial function of total degree <= ``degree``.

    The monomials are split in two halves; each half's distinct partial
    sums are generated, and every sum of one function from each half is
    checked. That covers every coefficient vector.
    """
    _budget_check(R.size, arity)
    _require_topological_ring(R, T)
    monos = [e for e in itertools.product(range(degree + 1), repeat=arity) if sum(e) <= degree]
    dtype = np.int16 if R.size <= 1 << 15 else np.int64
    add, mul = R.add_table.astype(dtype), R.mul_table.astype(dtype)
    tables = np.stack([_monomial_table(R, e) for e in monos]).astype(dtype)
    half = len(monos) // 2
    A, B = _span(tables[:half], add, mul, R.size), _span(tables[half:], add, mul, R.size)
    P, Q = _generators(T.up, arity)
    cols = tables.shape[1]
    step = max(1, block_cells // (len(B) * cols))
    report = Report("polynomial-continuity", details={"ring": R.spec, "degree": degree, "arity": arity})
    bad = None
    for lo in range(0, len(A), step):
        F = add[A[lo : lo + step, None, :], B[None, :, :]].reshape(-1, cols)
        ok = ft.monotone_tables(F, P, Q, T)
        if not ok.all():
            bad = F[int(np.argmin(ok))].tolist()
            break
    report.details.update(monomials=len(monos), halves=[len(A), len(B)], checked=len(A) * len(B))
    report.details["coefficient_space"] = R.size ** len(monos)
    report.require("all_continuous", bad is None, bad)
    return report.finish()


def polynomial_sample(R: FiniteRing, T: FinTopology, degree: int = 3, arity: int = 2, count: int = 512, seed: int = 0) -> Report:
    """Seeded random coefficient vectors, for rings too large to sweep."""
    _budget_check(R.size, arity)
    _require_topological_ring(R, T)
    monos = [e for e in itertools.product(range(degree + 1), repeat=arity) if sum(e) <= degree]
    tables = np.stack([_monomial_table(R, e) for e in monos])
    coeffs = np.random.default_rng(seed).integers(0, R.size, size=(count, len(monos)))
    F = np.full((count, tables.shape[1]), R.zero, dtype=np.int64)
    for j in range(len(monos)):
        F = R.add_table[F, R.mul_table[coeffs[:, j : j + 1], tables[j][None, :]]]
    P, Q = _generators(T.up, arity)
    ok = ft.monotone_tables(F, P, Q, T)
    report = Report("polynomial-continuity", details={"ring": R.spec, "degree": degree, "arity": arity, "sampled": count, "seed": seed})
    bad = None if ok.all() else coeffs[int(np.argmin(ok))].tolist()
    report.require("all_continuous", bad is None, {"coefficients": bad, "monomials": monos})
    return report.finish()


def monomial_sweep(G: FiniteGroup, T: FinTopology, max_exp: int = 3, arity: int = 2) -> Report:
    """Every monomial a x1^d1 ... xk^dk with |di| <= max_exp, k <= arity,
    and every constant a, checked in one vectorised pass per arity."""
    _budget_check(G.size, arity)
    _require_topological_group(G, T)
    op = np.array(G.op, dtype=np.int64)
    report = Report("monomial-continuity", details={"group": G.name, "max_exp": max_exp, "arity": arity})
    checked = 0
    for k in range(1, arity + 1):
        P, Q = _generators(T.up, k)
        exps = list(itertools.product(range(-max_exp, max_exp + 1), repeat=k))
        base = np.stack([monomial_table(G, e, G.identity) for e in exps])
        tables = op[np.arange(G.size)[:, None, None], base[None, :, :]].reshape(-1, G.size**k)
        ok = ft.monotone_tables(tables, P, Q, T)
        checked += len(ok)
        if not ok.all():
            i = int(np.argmin(ok))
            a, e = divmod(i, len(exps))
            report.require("continuous", False, {"a": a, "exponents": list(exps[e])})
    report.details["checked"] = checked
    return report.finish()


def neighbourhoods(T: FinTopology, x: int, limit: int = 8) -> list[int]:
    """Open sets containing x: every one when the minimal opens outside
    up[x] are few, else up[x] and its unions with single minimal opens."""
    base = T.up[x]
    extra = sorted({u for u in T.up if u & ~base})
    if len(extra) > limit:
        return sorted({base} | {base | u for u in extra}, key=lambda m: (popcount(m), elements_of(m)))
    found = {base}
    for u in extra:
        found |= {v | u for v in found}
    return sorted(found, key=lambda m: (popcount(m), elements_of(m)))


def power_neighborhood(G: FiniteGroup, T: FinTopology, U: Iterable[int], n: int) -> tuple[int, ...]:
    """An open V around e with V^n inside U.

    Starts from the smallest open neighbourhood of e (the product rectangle
    inside the preimage of U under the n-fold product) and greedily adds
    minimal open sets while V^n stays inside U.
    """
    _require_topological_group(G, T)
    u = mask_of(U)
    if not T.is_open(u) or not (u >> G.identity) & 1:
        raise HypothesisError("U must be an open set containing the identity")

    def nth_power(V: int) -> int:
        out = V
        for _ in range(n - 1):
            out = G.set_product(out, V)
        return out

    report = Report("power-neighborhood", details={"group": G.name, "U": list(elements_of(u)), "n": n})
    V = T.up[G.identity]
    report.require("minimal_neighborhood_works", nth_power(V) & ~u == 0, list(elements_of(V)))
    report.finish()
    for x in range(G.size):
        if not (V >> x) & 1:
            W = V | T.up[x]
            if nth_power(W) & ~u == 0:
                V = W
    return elements_of(V)


def boolean_subspace_check(R: FiniteRing, T: FinTopology) -> Report:
    """The idempotents with the subspace topology form a topological ring
    under e + f - 2ef and the ring product."""
    _require_topological_ring(R, T)
    B = boolean_ring(R)
    sub, _ = ft.subspace_topology(T, B.elements)
    tr = check_topological_ring(B.as_ring(check=False), sub)
    report = Report("boolean-subspace", details={"ring": R.spec, "idempotents": list(B.elements)})
    report.require("xor_continuous", tr.add_continuous, tr.witnesses.get("add"))
    report.require("mul_continuous", tr.mul_continuous, tr.witnesses.get("mul"))
    return report.finish()


def pointwise_check(TX: FinTopology, f: Sequence[int], g: Sequence[int], R: FiniteRing, T: FinTopology) -> Report:
    """For continuous f, g: X -> R, pointwise f + g and f g are continuous."""
    report = Report("pointwise-operations")
    F = MapTable(TX.n, R.size, tuple(f))
    Gm = MapTable(TX.n, R.size, tuple(g))
    if not (ft.is_continuous(F, TX, T) and ft.is_continuous(Gm, TX, T) and check_topological_ring(R, T).is_topological):
        report.verdict = UNMET
        return report
    s = MapTable(TX.n, R.size, tuple(R.plus[a][b] for a, b in zip(f, g)))
    p = MapTable(TX.n, R.size, tuple(R.times[a][b] for a, b in zip(f, g)))
    report.require("sum_continuous", bool(ft.is_continuous(s, TX, T)))
    report.require("product_continuous", bool(ft.is_continuous(p, TX, T)))
    return report.finish()


def product_ring_check(R1: FiniteRing, T1: FinTopology, R2: FiniteRing, T2: FinTopology) -> Report:
    """A product of topological rings with the product topology."""
    from .finring import product_ring

    report = Report("product-ring", details={"factors": [R1.spec, R2.spec]})
    if not (check_topological_ring(R1, T1).is_topological and check_topological_ring(R2, T2).is_topological):
        report.verdict = UNMET
        return report
    tr = check_topological_ring(product_ring(R1, R2), ft.product_topology(T1, T2))
    report.require("topological_ring", tr.is_topological, tr.witnesses)
    return report.finish()


# -- components ---------------------------------------------------------------


def _as_group(structure) -> FiniteGroup:
    return additive_group(structure) if isinstance(structure, FiniteRing) else structure


def identity_component(structure, T: FinTopology) -> tuple[tuple[int, ...], Report]:
    """Component of the identity (of zero, for rings) and its coset quotient.

    For a topological group the component is a normal subgroup whose cosets
    are the components; for a ring it is moreover an ideal.
    """
    G = _as_group(structure)
    is_ring = isinstance(structure, FiniteRing)
    if is_ring:
        _require_topological_ring(structure, T)
    else:
        _require_topological_group(G, T)
    part, comp_space = ft.pi0(T)
    N = part.masks[part.block_of[G.identity]]
    report = Report("zero-component" if is_ring else "identity-component", details={"component": list(elements_of(N))})
    report.require("normal_subgroup", G.is_normal(N), list(elements_of(N)))
    if is_ring:
        report.require("ideal", is_ideal(structure, elements_of(N)), list(elements_of(N)))
    cosets = Partition.of(G.left_cosets(N), G.size)
    report.require("cosets_are_components", cosets == part, [list(b) for b in part.blocks])
    report.require("quotient_is_component_space", ft.quotient_topology(T, cosets) == comp_space)
    return elements_of(N), report.finish()


# -- adic structure ---------------------------------------------------------


def _subset_sums(R: FiniteRing, J: Ideal) -> list[int]:
    """S + J for every subset mask S, built from singleton cosets."""
    coset = [mask_of(R.plus[a][i] for i in J) for a in range(R.size)]
    out = [0] * (1 << R.size)
    for S in range(1, 1 << R.size):
        low = (S & -S).bit_length() - 1
        out[S] = out[S & (S - 1)] | coset[low]
    return out


def adic_structure_theorems(R: FiniteRing, I: Ideal, subset_limit: int = 12) -> Report:
    """Closure formula, point closures, components and t(R) for the I-adic
    topology, the idempotent and Hausdorff criteria.

    Every subset is checked against the brute-force closure when |R| <=
    ``subset_limit``; larger rings check singletons, pairs and ideals.
    """
    adic = adic_topology(R, I)
    T, chain = adic.topology, adic.chain
    stable = chain.stable
    report = Report("adic-structure", details={"ring": R.spec, "ideal": list(I.elements), "stable": list(stable.elements)})
    powers = [chain.power(k) for k in range(1, chain.stable_index + 2)]

    # closure of S is the intersection of the S + I^n
    if R.size <= subset_limit:
        brute = ft.all_closures_by_closed_sets(T)
        sums = [_subset_sums(R, J) for J in powers]
        bad = None
        for S in range(1 << R.size):
            formula = full_mask(R.size)
            for tab in sums:
                formula &= tab[S]
            if int(brute[S]) != formula or T.closure(S) != formula:
                bad = list(elements_of(S))
                break
        report.require("closure_formula", bad is None, bad)
        report.details["subsets_checked"] = 1 << R.size
    else:
        samples = [1 << x for x in range(R.size)]
        samples += [(1 << x) | (1 << y) for x in range(R.size) for y in range(x)]
        bad = None
        for S in samples:
            formula = full_mask(R.size)
            for J in powers:
                formula &= mask_of(R.plus[s][i] for s in elements_of(S) for i in J)
            if T.closure(S) != formula:
                bad = list(elements_of(S))
                break
        report.require("closure_formula", bad is None, bad)
        report.details["subsets_checked"] = len(samples)

    # point closures are x + stable
    bad = [x for x in range(R.size) if T.down[x] != mask_of(R.plus[x][i] for i in stable)]
    report.require("point_closure", not bad, bad)

    # pi0 == R/stable == t(R)
    part, comp_space = ft.pi0(T)
    cosets = Partition.of(stable.cosets(), R.size)
    quotient = ft.quotient_topology(T, cosets)
    sober = ft.sober_space(T)
    ok1, w1 = ft.is_homeomorphic(comp_space, quotient)
    ok2, w2 = ft.is_homeomorphic(sober.topology, quotient)
    report.require("components_are_cosets", part == cosets)
    report.require("pi0_homeomorphic_quotient", ok1 and ft.is_homeomorphism(w1, comp_space, quotient))
    report.require("sober_homeomorphic_quotient", ok2 and ft.is_homeomorphism(w2, sober.topology, quotient))
    report.require("sober_points_are_cosets", set(sober.points) == set(cosets.masks))
    report.details.update(pi0_size=len(part.blocks), sober_method=sober.method)

    # I connected iff I idempotent; then R/I is the component space
    connected = ft.is_connected_subset(T, I.elements)
    report.record("ideal_connected", connected)
    report.require("connected_iff_idempotent", connected == chain.idempotent)
    if chain.idempotent:
        report.require("idempotent_components", part == Partition.of(I.cosets(), R.size))

    # Hausdorff <=> stable = 0 <=> totally disconnected <=> singleton component
    preds = ft.space_predicates(T)
    singleton = any(len(b) == 1 for b in part.blocks)
    four = (preds.hausdorff, stable.is_zero, preds.totally_disconnected, singleton)
    report.details["hausdorff"] = preds.hausdorff
    report.require("hausdorff_equivalences", len(set(four)) == 1, four)

    # a proper ideal leaves R disconnected
    report.require("proper_disconnected", I.is_whole or not preds.connected)
    return report.finish()


# -- density and triviality ---------------------------------------------------


def _quotient_is_trivial(G: FiniteGroup, T: FinTopology, H: int) -> bool:
    return ft.quotient_topology(T, Partition.of(G.left_cosets(H), G.size)).is_trivial


def dense_triviality(structure, T: FinTopology, H: Iterable[int] | None = None) -> Report:
    """Dense identity forces the trivial topology; a subgroup with trivial
    coset quotient is dense, and for normal subgroups conversely. For rings
    the same for ideals, plus the field statement."""
    is_ring = isinstance(structure, FiniteRing)
    G = _as_group(structure)
    if is_ring:
        _require_topological_ring(structure, T)
    else:
        _require_topological_group(G, T)
    report = Report("dense-triviality", details={"structure": G.name})
    e_dense = T.down[G.identity] == T.full
    report.record("identity_dense", e_dense)
    report.record("trivial", T.is_trivial)
    report.require("dense_identity_iff_trivial", e_dense == T.is_trivial)
    e_closed = T.down[G.identity] == 1 << G.identity
    if G.is_simple:
        report.require("simple_closed_or_trivial", e_closed or T.is_trivial)
    if is_ring and structure.is_field:
        report.require("field_closed_or_trivial", e_closed or T.is_trivial)
    if H is not None:
        h = mask_of(H)
        if not G.is_subgroup(h):
            report.verdict = UNMET
            report.notes.append("H is not a subgroup")
            return report
        dense = T.closure(h) == T.full
        quot_trivial = _quotient_is_trivial(G, T, h)
        report.details.update(H=list(elements_of(h)), dense=dense, quotient_trivial=quot_trivial)
        report.require("trivial_quotient_implies_dense", dense or not quot_trivial)
        if G.is_normal(h):
            report.require("dense_normal_implies_trivial_quotient", quot_trivial or not dense)
            if is_ring and is_ideal(structure, elements_of(h)):
                report.require("dense_ideal_iff_trivial_quotient", dense == quot_trivial)
    return report.finish()


# -- closures of substructures ---------------------------------------------------


def is_multiplicative(R: FiniteRing, S: int) -> bool:
    if not (S >> R.one) & 1:
        return False
    els = elements_of(S)
    return all((S >> R.times[a][b]) & 1 for a in els for b in els)


def is_subring(R: FiniteRing, S: int) -> bool:
    els = elements_of(S)
    return is_multiplicative(R, S) and all((S >> R.sub(a, b)) & 1 for a in els for b in els)


def submonoids(R: FiniteRing) -> list[int]:
    """Every multiplicatively closed subset containing 1, found by closing
    up one added element at a time."""

    def close(S: int) -> int:
        frontier = elements_of(S)
        while frontier:
            new = 0
            for a in frontier:
                for b in elements_of(S):
                    c = R.times[a][b]
                    if not ((S | new) >> c) & 1:
                        new |= 1 << c
            S |= new
            frontier = elements_of(new)
        return S

    start = close(1 << R.one)
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for x in range(R.size):
                if not (S >> x) & 1:
                    T = close(S | (1 << x))
                    if T not in found:
                        found.add(T)
                        nxt.append(T)
        frontier = nxt
    return sorted(found, key=lambda m: (popcount(m), elements_of(m)))


def subrings(R: FiniteRing) -> list[int]:
    return [H for H in additive_group(R).subgroups() if is_multiplicative(R, H)]


def substructures(structure, kind: str) -> list[int]:
    """All subsets of the given kind, as masks."""
    if kind == "subgroup":
        return _as_group(structure).subgroups()
    if kind == "normal-subgroup":
        G = _as_group(structure)
        return [H for H in G.subgroups() if G.is_normal(H)]
    if not isinstance(structure, FiniteRing):
        raise ValueError(f"{kind} needs a ring")
    if kind == "ideal":
        return [J.mask for J in all_ideals(structure)]
    if kind == "multiplicative-set":
        return submonoids(structure)
    if kind == "subring":
        return subrings(structure)
    raise ValueError(f"unknown kind {kind!r}")


def _kind_test(structure, kind: str):
    if kind in ("subgroup", "normal-subgroup"):
        G = _as_group(structure)
        return G.is_subgroup if kind == "subgroup" else G.is_normal
    if not isinstance(structure, FiniteRing):
        raise ValueError(f"{kind} needs a ring")
    R = structure
    if kind == "ideal":
        return lambda S: S != 0 and is_ideal(R, elements_of(S))
    if kind == "multiplicative-set":
        return lambda S: is_multiplicative(R, S)
    if kind == "subring":
        return lambda S: is_subring(R, S)
    raise ValueError(f"unknown kind {kind!r}")


KINDS = ("subgroup", "normal-subgroup", "ideal", "multiplicative-set", "subring")


def closure_substructure(structure, T: FinTopology, subset: Iterable[int], kind: str) -> Report:
    """The closure of a subgroup (normal subgroup, ideal, multiplicative
    set, subring) is again one."""
    test = _kind_test(structure, kind)
    if isinstance(structure, FiniteRing):
        _require_topological_ring(structure, T)
    else:
        _require_topological_group(structure, T)
    S = mask_of(subset)
    report = Report("closure-substructure", details={"kind": kind, "subset": list(elements_of(S))})
    if not test(S):
        report.verdict = UNMET
        return report
    cl = T.closure(S)
    report.details["closure"] = list(elements_of(cl))
    report.require("closure_same_kind", test(cl), list(elements_of(cl)))
    return report.finish()


def hausdorff_discrete_criteria(G: FiniteGroup, T: FinTopology) -> Report:
    _require_topological_group(G, T)
    preds = ft.space_predicates(T)
    report = Report("hausdorff-discrete", details={"group": G.name})
    e_closed = T.down[G.identity] == 1 << G.identity
    isolated = any(u == 1 << x for x, u in enumerate(T.up))
    report.details.update(hausdorff=preds.hausdorff, identity_closed=e_closed, discrete=preds.discrete, isolated=isolated)
    report.require("hausdorff_iff_identity_closed", preds.hausdorff == e_closed)
    report.require("discrete_iff_isolated_point", preds.discrete == isolated)
    return report.finish()


# -- closure formula in groups, weak closedness --------------------------------


def group_closure_formula(G: FiniteGroup, T: FinTopology, S: Iterable[int]) -> Report:
    """closure(S) = meet of S U = meet of closure(S U) over open U around e;
    E K and K E closed for closed E; G -> G/H closed for every subgroup H."""
    _require_topological_group(G, T)
    s = mask_of(S)
    report = Report("group-closure", details={"group": G.name, "S": list(elements_of(s))})
    report.notes.append(DEGENERATE)
    report.notes.append("products of closed sets with finite sets are always closed here")
    nbhds = neighbourhoods(T, G.identity)
    meet = meet_cl = T.full
    for U in nbhds:
        SU = G.set_product(s, U)
        meet &= SU
        meet_cl &= T.closure(SU)
    cl = T.closure(s)
    report.require("closure_is_meet_SU", cl == meet, list(elements_of(meet)))
    report.require("closure_is_meet_closure_SU", cl == meet_cl, list(elements_of(meet_cl)))
    # products distribute over unions, so point closures stand for all closed sets
    closed = [T.down[x] for x in range(T.n)]
    bad = [
        list(elements_of(E))
        for E in closed
        if not T.is_closed(G.set_product(E, s)) or not T.is_closed(G.set_product(s, E))
    ]
    report.require("EK_KE_closed", not bad, bad[:1])
    bad_h = _non_closed_quotients(G, T)
    report.require("quotient_map_closed", not bad_h, bad_h[:1])
    return report.finish()


@lru_cache(maxsize=256)
def _non_closed_quotients(G: FiniteGroup, T: FinTopology) -> list[list[int]]:
    """Subgroups H for which G -> G/H is not a closed map."""
    bad = []
    for H in G.subgroups():
        part = Partition.of(G.left_cosets(H), G.size)
        if not ft.is_closed_map(part.projection(), T, ft.quotient_topology(T, part)):
            bad.append(list(elements_of(H)))
    return bad


def is_weak_closed(T: FinTopology, H: int) -> bool:
    """Some open U meets H in a nonempty set closed in U.

    If U works then so does the minimal open of any x in U and H, since
    relative closedness passes to smaller subspaces.
    """
    for x in elements_of(H):
        U = T.up[x]
        sub, pts = ft.subspace_topology(T, elements_of(U))
        rel = mask_of(i for i, p in enumerate(pts) if (H >> p) & 1)
        if sub.is_closed(rel):
            return True
    return False


def is_weak_closed_by_opens(T: FinTopology, H: int) -> bool:
    for U in T.opens:
        if U & H:
            sub, pts = ft.subspace_topology(T, elements_of(U))
            if sub.is_closed(mask_of(i for i, p in enumerate(pts) if (H >> p) & 1)):
                return True
    return False


def weak_closed_check(G: FiniteGroup, T: FinTopology, H: Iterable[int]) -> Report:
    _require_topological_group(G, T)
    h = mask_of(H)
    report = Report("weak-closed", details={"group": G.name, "H": list(elements_of(h))})
    closed_under_op = h != 0 and G.set_product(h, h) & ~h == 0
    if not closed_under_op:
        report.verdict = UNMET
        report.notes.append("H is empty or not closed under the operation")
        return report
    weak = is_weak_closed(T, h)
    closed = T.is_closed(h)
    report.details.update(weak_closed=weak, closed=closed)
    report.require("finite_closed_is_subgroup", G.is_subgroup(h))
    if weak:
        report.require("weak_closed_implies_closed", closed)
    report.require("closed_implies_weak_closed", weak or not closed)
    return report.finish()


# -- adic morphisms -----------------------------------------------------------


def adic_morphism_continuity(f: RingMorphism, I: Ideal, J: Ideal) -> Report:
    """f continuous between the I-adic and J-adic topologies iff some
    f(I^n) lies in J."""
    R, S = f.domain, f.codomain
    if I.ring is not R or J.ring is not S:
        raise ValueError("ideals must live in the morphism's domain and codomain")
    cI, cJ = ideal_power_chain(R, I), ideal_power_chain(S, J)
    TI = FinTopology(R.size, adic_up_masks(R, cI.stable))
    TJ = FinTopology(S.size, adic_up_masks(S, cJ.stable))
    cont = bool(ft.is_continuous(MapTable(R.size, S.size, f.map), TI, TJ))
    exps = [k for k in range(1, cI.stable_index + 1) if f.image(cI.power(k)) <= set(J.elements)]
    report = Report("adic-morphism", details={"domain": R.spec, "codomain": S.spec, "I": list(I.elements), "J": list(J.elements)})
    report.details.update(continuous=cont, exponent=exps[0] if exps else None)
    report.require("continuous_iff_power_inside", cont == bool(exps))
    if S is R and f.map == tuple(range(R.size)):
        finer = all(TI.up[x] & ~TJ.up[x] == 0 for x in range(R.size))
        report.details["I_adic_finer"] = finer
        report.require("finer_iff_power_inside", finer == bool(exps))
        maxl = {M.elements for M in maximal_ideals(R)}
        if I.elements in maxl and J.elements in maxl:
            report.require("maximal_same_topology_iff_equal", (TI == TJ) == (I == J))
    return report.finish()


# -- the corrected closed-map statement -------------------------------------------


def koh_hypotheses(R: FiniteRing, T: FinTopology, x: int) -> Report:
    """For 0 != x in Z(R): when r -> rx is a closed map, Ann(x) is closed
    exactly when T is Hausdorff, and Rx is closed."""
    _require_topological_ring(R, T)
    if x == R.zero or x not in zerodivisors(R):
        raise HypothesisError("x must be a nonzero zerodivisor")
    f = MapTable(R.size, R.size, tuple(R.times[r][x] for r in range(R.size)))
    closed_map = ft.is_closed_map(f, T, T)
    ker = annihilator(R, x)
    ker_closed = T.is_closed(ker.mask)
    hausdorff = ft.is_hausdorff(T)
    report = Report("closed-multiplication", details={"ring": R.spec, "x": x, "kernel": list(ker.elements)})
    report.details.update(closed_map=closed_map, kernel_closed=ker_closed, hausdorff=hausdorff)
    report.notes.append(DEGENERATE)
    report.record("compact_conclusion", "degenerate-finite")
    if not closed_map:
        report.verdict = UNMET
        return report
    report.require("kernel_closed_iff_hausdorff", ker_closed == hausdorff)
    report.require("principal_ideal_closed", T.is_closed(f.image(T.full)))
    return report.finish()
