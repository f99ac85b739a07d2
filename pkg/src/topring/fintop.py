"""Finite topological spaces via their specialization preorder.

A topology on ``range(n)`` is stored as ``up[x]``, the bitmask of the
smallest open set containing ``x``. Then ``x <= y`` (x lies in the closure
of y) iff ``y`` is in ``up[x]``, and the open sets are exactly the
up-closed sets. The open family itself is enumerated lazily; it can be
exponentially large, so every fast path works on ``up``.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .bits import elements_of, full_mask, lowest, mask_of, popcount, subset_key
from .reports import BudgetExceeded

EXHAUSTIVE_CAP = 6
OPEN_FAMILY_CAP = 1 << 16


class TopologyError(ValueError):
    def __init__(self, axiom: str, witness=None):
        super().__init__(f"not a topology: {axiom}" + (f" (witness {witness})" if witness is not None else ""))
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FinTopology:
    n: int
    up: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, FinTopology) and self.n == other.n and self.up == other.up

    def __hash__(self):
        return hash(self.up)

    def __repr__(self):
        if self.n <= 6:
            return f"FinTopology({self.to_json()})"
        return f"FinTopology(n={self.n})"

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def leq(self, x: int, y: int) -> bool:
        """Specialization order: x is in the closure of {y}."""
        return (self.up[x] >> y) & 1 == 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.n
        for x in range(self.n):
            for y in elements_of(self.up[x]):
                d[y] |= 1 << x
        return tuple(d)

    @cached_property
    def preorder(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.n)] for x in range(self.n)]

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        return np.array(self.preorder, dtype=bool).reshape(self.n, self.n)

    def is_open(self, mask: int) -> bool:
        return all(self.up[x] & ~mask == 0 for x in elements_of(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.full & ~mask)

    def closure(self, mask: int) -> int:
        out = 0
        for x in elements_of(mask):
            out |= self.down[x]
        return out

    def interior(self, mask: int) -> int:
        return mask_of(x for x in elements_of(mask) if self.up[x] & ~mask == 0)

    def open_hull(self, mask: int) -> int:
        """Smallest open set containing ``mask``."""
        out = 0
        for x in elements_of(mask):
            out |= self.up[x]
        return out

    @cached_property
    def opens(self) -> tuple[int, ...]:
        """All open sets in canonical (size, lexicographic) order."""
        return tuple(sorted(_up_sets(self.up, self.n), key=subset_key))

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        return tuple(sorted((self.full & ~u for u in self.opens), key=subset_key))

    def open_lists(self) -> list[list[int]]:
        return [list(elements_of(u)) for u in self.opens]

    def to_literal(self) -> dict:
        """The open family, or the minimal open sets when the family is
        too large to list. ``from_literal`` reads both forms."""
        try:
            return {"n": self.n, "opens": self.open_lists()}
        except BudgetExceeded:
            return self.compact_literal()

    def compact_literal(self) -> dict:
        """Minimal open set of every point; cheap for any size."""
        return {"n": self.n, "up": [list(elements_of(u)) for u in self.up]}

    def to_json(self) -> str:
        return json.dumps(self.to_literal(), separators=(",", ":"))

    @cached_property
    def canonical_key(self) -> tuple:
        return tuple(subset_key(u)[1] for u in self.opens)

    @property
    def is_discrete(self) -> bool:
        return all(u == 1 << x for x, u in enumerate(self.up))

    @property
    def is_trivial(self) -> bool:
        return all(u == self.full for u in self.up)

    @property
    def is_t0(self) -> bool:
        return len(set(self.up)) == self.n


def _up_sets(up: Sequence[int], n: int, cap: int = OPEN_FAMILY_CAP) -> set[int]:
    """Every union of minimal opens, by breadth-first closure."""
    found = {0}
    frontier = [0]
    gens = sorted(set(up))
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = s | g
                if t not in found:
                    found.add(t)
                    nxt.append(t)
                    if len(found) > cap:
                        raise BudgetExceeded(f"more than {cap} open sets on {n} points")
        frontier = nxt
    return found


def _check_ground(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise TopologyError("ground set must be nonempty", n)


def make_topology(n: int, opens: Iterable[Iterable[int]]) -> FinTopology:
    """Validate an open family and derive its specialization preorder."""
    _check_ground(n)
    masks = set()
    for u in opens:
        u = list(u)
        for x in u:
            if not isinstance(x, int) or not 0 <= x < n:
                raise TopologyError("open set not inside the ground set", u)
        masks.add(mask_of(u))
    full = full_mask(n)
    if 0 not in masks:
        raise TopologyError("empty set missing")
    if full not in masks:
        raise TopologyError("full set missing")
    ordered = sorted(masks, key=subset_key)
    for a, b in itertools.combinations(ordered, 2):
        if a | b not in masks:
            raise TopologyError("union missing", (list(elements_of(a)), list(elements_of(b))))
        if a & b not in masks:
            raise TopologyError("intersection missing", (list(elements_of(a)), list(elements_of(b))))
    up = []
    for x in range(n):
        m = full
        for u in masks:
            if (u >> x) & 1:
                m &= u
        up.append(m)
    top = FinTopology(n, tuple(up))
    top.__dict__["opens"] = tuple(ordered)
    return top


def from_literal(literal: dict | str) -> FinTopology:
    if isinstance(literal, str):
        literal = json.loads(literal)
    if "up" in literal:
        return from_up_masks(int(literal["n"]), [mask_of(u) for u in literal["up"]])
    return make_topology(int(literal["n"]), literal["opens"])


def from_preorder(n: int, leq) -> FinTopology:
    """From a reflexive, transitive relation given as a boolean matrix."""
    _check_ground(n)
    up = [mask_of(y for y in range(n) if leq[x][y]) for x in range(n)]
    return from_up_masks(n, up)


def from_up_masks(n: int, up: Sequence[int]) -> FinTopology:
    _check_ground(n)
    up = tuple(int(u) for u in up)
    for x in range(n):
        if not (up[x] >> x) & 1:
            raise TopologyError("preorder not reflexive", x)
        for y in elements_of(up[x]):
            if up[y] & ~up[x]:
                raise TopologyError("preorder not transitive", (x, y))
    return FinTopology(n, up)


def discrete(n: int) -> FinTopology:
    _check_ground(n)
    return FinTopology(n, tuple(1 << x for x in range(n)))


def trivial(n: int) -> FinTopology:
    _check_ground(n)
    return FinTopology(n, (full_mask(n),) * n)


def sierpinski() -> FinTopology:
    """{0} open, {1} closed."""
    return make_topology(2, [[], [0], [0, 1]])


# -- enumeration ------------------------------------------------------------


def _preorder_masks(n: int) -> Iterator[tuple[int, ...]]:
    """All preorders on range(n) as up-mask tuples, each exactly once.

    Extends a preorder on range(k) by a new point k: choose the down-closed
    set D of points below k and the up-closed set U of points above it,
    subject to d <= u for every d in D, u in U.
    """
    if n == 0:
        yield ()
        return
    for up in _preorder_masks(n - 1):
        k = n - 1
        opens = _up_sets(up, k) if k else {0}
        full = full_mask(k)
        closed = [full & ~u for u in opens]
        for D in closed:
            meet = full
            for d in elements_of(D):
                meet &= up[d]
            bit = 1 << k
            for U in opens:
                if U & ~meet:
                    continue
                new = [u | bit if (D >> x) & 1 else u for x, u in enumerate(up)]
                new.append(bit | U)
                yield tuple(new)


def enumerate_topologies(n: int, sample: int | None = None, seed: int = 0) -> Iterator[FinTopology]:
    """Every topology on n points in canonical order (or a seeded sample).

    Exhaustive mode is allowed up to ``EXHAUSTIVE_CAP`` points; above that a
    ``sample`` count is required and topologies come from random relations
    closed under reflexivity and transitivity (not uniform over topologies).
    """
    _check_ground(n)
    if sample is not None:
        yield from sample_topologies(n, sample, seed)
        return
    if n > EXHAUSTIVE_CAP:
        raise BudgetExceeded(f"exhaustive enumeration is capped at {EXHAUSTIVE_CAP} points; pass sample=")
    tops = [FinTopology(n, up) for up in _preorder_masks(n)]
    tops.sort(key=lambda t: t.canonical_key)
    yield from tops


def count_topologies(n: int) -> int:
    if n > EXHAUSTIVE_CAP:
        raise BudgetExceeded(f"exhaustive enumeration is capped at {EXHAUSTIVE_CAP} points")
    return sum(1 for _ in _preorder_masks(n))


def sample_topologies(n: int, count: int, seed: int = 0) -> Iterator[FinTopology]:
    rng = random.Random(seed)
    for _ in range(count):
        density = rng.random() * 0.5
        leq = [[x == y or rng.random() < density for y in range(n)] for x in range(n)]
        for k in range(n):  # Warshall
            for i in range(n):
                if leq[i][k]:
                    row_k = leq[k]
                    leq[i] = [a or b for a, b in zip(leq[i], row_k)]
        yield from_preorder(n, leq)


def topologies_by_family_filter(n: int) -> list[FinTopology]:
    """Brute force: every family of subsets containing the empty and full
    set, kept when closed under pairwise union and intersection.

    Doubly exponential; meant for n <= 3.
    """
    if n > 3:
        raise BudgetExceeded("family filter oracle is limited to 3 points")
    full = full_mask(n)
    middle = [m for m in range(1, full)]
    out = []
    for choice in itertools.product((False, True), repeat=len(middle)):
        fam = {0, full} | {m for m, c in zip(middle, choice) if c}
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.append(make_topology(n, [elements_of(u) for u in fam]))
    return out


# -- maps and derived spaces ------------------------------------------------


@dataclass(frozen=True)
class MapTable:
    domain_size: int
    codomain_size: int
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.domain_size or any(not 0 <= y < self.codomain_size for y in self.map):
            raise ValueError("map table is not a total function into the codomain")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self, mask: int) -> int:
        return mask_of(self.map[x] for x in elements_of(mask))

    def preimage(self, mask: int) -> int:
        return mask_of(x for x, y in enumerate(self.map) if (mask >> y) & 1)


def map_table(table: Sequence[int], codomain_size: int) -> MapTable:
    return MapTable(len(table), codomain_size, tuple(int(y) for y in table))


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "Partition":
        bl = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bl):
            raise ValueError("partition has an empty block")
        flat = [x for b in bl for x in b]
        if len(flat) != len(set(flat)):
            raise ValueError("partition blocks overlap")
        if n is not None and sorted(flat) != list(range(n)):
            raise ValueError("partition does not cover the ground set")
        return cls(tuple(sorted(bl)))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        out = [0] * self.size
        for k, b in enumerate(self.blocks):
            for x in b:
                out[x] = k
        return tuple(out)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(b) for b in self.blocks)

    def projection(self) -> MapTable:
        return MapTable(self.size, len(self.blocks), self.block_of)


def product_topology(T1: FinTopology, T2: FinTopology) -> FinTopology:
    """Product on pairs (a, b) numbered a * T2.n + b.

    Computed from the preorders (componentwise order); when both open
    families are small it is recomputed from the rectangle base and the two
    must agree.
    """
    m = T2.n
    up = []
    for a in range(T1.n):
        rows = [b for b in elements_of(T1.up[a])]
        for b in range(m):
            mask = 0
            col = T2.up[b]
            for a2 in rows:
                mask |= col << (a2 * m)
            up.append(mask)
    P = FinTopology(T1.n * m, tuple(up))
    if T1.n <= EXHAUSTIVE_CAP and T2.n <= EXHAUSTIVE_CAP:
        R = _product_by_rectangles(T1, T2)
        if R.up != P.up:
            raise AssertionError("product topology: preorder and rectangle constructions differ")
    return P


def _rect(U: int, V: int, m: int) -> int:
    out = 0
    for a in elements_of(U):
        out |= V << (a * m)
    return out


def _product_by_rectangles(T1: FinTopology, T2: FinTopology) -> FinTopology:
    m = T2.n
    full = full_mask(T1.n * m)
    up = [full] * (T1.n * m)
    for U in T1.opens:
        for V in T2.opens:
            r = _rect(U, V, m)
            for p in elements_of(r):
                up[p] &= r
    return FinTopology(T1.n * m, tuple(up))


def power_topology(T: FinTopology, k: int) -> FinTopology:
    """T^k on tuples in row-major order."""
    P = T
    for _ in range(k - 1):
        P = product_topology(P, T)
    return P


def subspace_topology(T: FinTopology, subset: Iterable[int]) -> tuple[FinTopology, tuple[int, ...]]:
    """Subspace on ``subset``, reindexed; returns (topology, points) where
    ``points[i]`` is the original element of new index i."""
    pts = tuple(sorted(set(subset)))
    if not pts:
        raise TopologyError("subspace of the empty set")
    pos = {x: i for i, x in enumerate(pts)}
    up = [mask_of(pos[y] for y in elements_of(T.up[x]) if y in pos) for x in pts]
    return FinTopology(len(pts), tuple(up)), pts


def quotient_topology(T: FinTopology, partition: Partition) -> FinTopology:
    """W open iff the union of its blocks is open in T."""
    if partition.size != T.n or sorted(x for b in partition.blocks for x in b) != list(range(T.n)):
        raise ValueError("partition does not match the ground set")
    bmask = partition.masks
    block_of = partition.block_of
    up = []
    for k in range(len(bmask)):
        # smallest saturated open set containing block k
        cur = bmask[k]
        while True:
            nxt = T.open_hull(cur)
            sat = 0
            for j in {block_of[x] for x in elements_of(nxt)}:
                sat |= bmask[j]
            if sat == cur:
                break
            cur = sat
        up.append(mask_of({block_of[x] for x in elements_of(cur)}))
    return FinTopology(len(bmask), tuple(up))


def induced_topology(f: MapTable, T: FinTopology) -> FinTopology:
    """{f^-1(U) : U open}; the smallest open set around x is f^-1(up[f(x)])."""
    if f.codomain_size != T.n:
        raise ValueError("map codomain does not match the topology")
    return FinTopology(f.domain_size, tuple(f.preimage(T.up[f(x)]) for x in range(f.domain_size)))


def induced_by_open_family(f: MapTable, T: FinTopology) -> set[int]:
    return {f.preimage(U) for U in T.opens}


# -- closure, continuity, components ---------------------------------------


@dataclass(frozen=True)
class ClosureData:
    closure: tuple[int, ...]
    interior: tuple[int, ...]
    is_dense: bool
    isolated_points: tuple[int, ...]


def closure_calculus(T: FinTopology, S: Iterable[int]) -> ClosureData:
    s = mask_of(S)
    if s & ~T.full:
        raise ValueError("subset not inside the ground set")
    cl = T.closure(s)
    return ClosureData(
        elements_of(cl),
        elements_of(T.interior(s)),
        cl == T.full,
        tuple(x for x in range(T.n) if T.up[x] == 1 << x),
    )


def closure_by_closed_sets(T: FinTopology, s: int) -> int:
    """Smallest closed superset by scanning the closed family."""
    out = T.full
    for c in T.closed_sets:
        if s & ~c == 0:
            out &= c
    return out


def all_closures_by_closed_sets(T: FinTopology) -> np.ndarray:
    """Closure of every subset of a small space at once.

    Marks each closed set, then takes the AND over closed supersets with a
    superset-zeta transform over the subset lattice.
    """
    n = T.n
    if n > 20:
        raise BudgetExceeded("subset-lattice transforms are limited to 20 points")
    S = np.arange(1 << n, dtype=np.int64)
    F = np.full(1 << n, full_mask(n), dtype=np.int64)
    closed = _closed_flags(T, S)
    F[closed] = S[closed]
    for i in range(n):
        bit = 1 << i
        lo = S[(S & bit) == 0]
        F[lo] &= F[lo | bit]
    return F


def _closed_flags(T: FinTopology, S: np.ndarray) -> np.ndarray:
    closed = np.ones(S.shape, dtype=bool)
    for x in range(T.n):
        d = T.down[x]
        has = ((S >> x) & 1).astype(bool)
        closed &= ~has | ((S & d) == d)
    return closed


@dataclass(frozen=True)
class Continuity:
    continuous: bool
    witness_open: tuple[int, ...] | None = None
    witness_preimage: tuple[int, ...] | None = None

    def __bool__(self):
        return self.continuous


def is_continuous(f: MapTable, TX: FinTopology, TY: FinTopology) -> Continuity:
    """Monotonicity for the specialization preorders.

    On failure x <= y with f(x) not <= f(y): V = up[f(x)] is open and its
    preimage contains x but not y, so it is not open.
    """
    if f.domain_size != TX.n or f.codomain_size != TY.n:
        raise ValueError("map sizes do not match the spaces")
    for x in range(TX.n):
        ux = TY.up[f(x)]
        for y in elements_of(TX.up[x]):
            if not (ux >> f(y)) & 1:
                return Continuity(False, elements_of(ux), elements_of(f.preimage(ux)))
    return Continuity(True)


def is_continuous_by_opens(f: MapTable, TX: FinTopology, TY: FinTopology) -> Continuity:
    """Definition: every open preimage is open (scans both open families)."""
    if f.domain_size != TX.n or f.codomain_size != TY.n:
        raise ValueError("map sizes do not match the spaces")
    opens_x = set(TX.opens)
    for V in TY.opens:
        pre = f.preimage(V)
        if pre not in opens_x:
            return Continuity(False, elements_of(V), elements_of(pre))
    return Continuity(True)


def is_closed_map(f: MapTable, TX: FinTopology, TY: FinTopology) -> bool:
    """Images of closed sets are closed; point closures suffice since every
    closed set is a union of them and images commute with unions."""
    return all(TY.is_closed(f.image(TX.down[x])) for x in range(TX.n))


def is_open_map(f: MapTable, TX: FinTopology, TY: FinTopology) -> bool:
    return all(TY.is_open(f.image(TX.up[x])) for x in range(TX.n))


def _components(T: FinTopology) -> list[int]:
    seen = 0
    comps = []
    for x in range(T.n):
        if (seen >> x) & 1:
            continue
        comp = 1 << x
        frontier = comp
        while frontier:
            y = lowest(frontier)
            frontier &= frontier - 1
            new = (T.up[y] | T.down[y]) & ~comp
            comp |= new
            frontier |= new
        seen |= comp
        comps.append(comp)
    return comps


def _is_connected_subset(T: FinTopology, C: int) -> bool:
    rel = {C & U for U in T.opens}
    return not any(A and A != C and (C & ~A) in rel for A in rel)


def components_by_separation(T: FinTopology) -> Partition:
    """Definitional oracle: the component of x is the union of all connected
    subsets containing x, where connected means no split into two disjoint
    nonempty relatively open parts."""
    if T.n > 8:
        raise BudgetExceeded("separation oracle is limited to 8 points")
    connected = [C for C in range(1, 1 << T.n) if _is_connected_subset(T, C)]
    comp = []
    for x in range(T.n):
        m = 0
        for C in connected:
            if (C >> x) & 1:
                m |= C
        comp.append(m)
    return Partition.of({elements_of(c) for c in comp}, T.n)


def pi0(T: FinTopology, crosscheck: bool = True) -> tuple[Partition, FinTopology]:
    """Connected components (comparability-graph components) and the
    quotient space on them."""
    part = Partition.of((elements_of(c) for c in _components(T)), T.n)
    if crosscheck and T.n <= 5:
        oracle = components_by_separation(T)
        if oracle != part:
            raise AssertionError(f"pi0 mismatch: {part} vs {oracle}")
    return part, quotient_topology(T, part)


@dataclass(frozen=True)
class SoberSpace:
    points: tuple[int, ...]  # irreducible closed subsets as masks
    topology: FinTopology
    canonical_map: MapTable
    continuous: bool
    closed_map: bool
    open_map: bool
    method: str


def irreducible_closed_sets(T: FinTopology) -> list[int]:
    """Enumerate closed sets, keep the irreducible ones.

    A nonempty closed E is reducible iff it is the union of its proper
    closed subsets (take a shortest such cover and split off one member).
    The union of closed subsets of every set comes from a subset-lattice
    OR transform.
    """
    n = T.n
    if n > 16:
        raise BudgetExceeded("closed-set enumeration is limited to 16 points")
    S = np.arange(1 << n, dtype=np.int64)
    closed = _closed_flags(T, S)
    G = np.where(closed, S, 0)
    for i in range(n):
        bit = 1 << i
        hi = S[(S & bit) != 0]
        G[hi] |= G[hi ^ bit]
    proper_union = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        bit = 1 << i
        hi = S[(S & bit) != 0]
        proper_union[hi] |= G[hi ^ bit]
    irreducible = closed & (S != 0) & (proper_union != S)
    return sorted((int(E) for E in S[irreducible]), key=subset_key)


def sober_space(T: FinTopology, exhaustive: bool | None = None) -> SoberSpace:
    """t(X): points are irreducible closed sets, closed sets are t(E).

    The specialization order on t(X) is inclusion. Above 16 points the
    closed-set enumeration is replaced by the point closures.
    """
    if exhaustive is None:
        exhaustive = T.n <= 16
    if exhaustive:
        points = irreducible_closed_sets(T)
        method = "closed-set enumeration"
    else:
        points = sorted(set(T.down), key=subset_key)
        method = "point closures"
    pos = {Z: i for i, Z in enumerate(points)}
    up = tuple(mask_of(j for j, Z2 in enumerate(points) if Z & ~Z2 == 0) for Z in points)
    top = FinTopology(len(points), up)
    missing = [x for x in range(T.n) if T.down[x] not in pos]
    if missing:
        raise AssertionError(f"point closures {missing} are not irreducible closed sets")
    f = MapTable(T.n, len(points), tuple(pos[T.down[x]] for x in range(T.n)))
    generic = all(any(T.down[x] == Z for x in elements_of(Z)) for Z in points)
    closed = is_closed_map(f, T, top)
    if closed != generic:
        raise AssertionError("closed-map verdict disagrees with generic-point criterion")
    return SoberSpace(tuple(points), top, f, bool(is_continuous(f, T, top)), closed, is_open_map(f, T, top), method)


def sober_closed_family(T: FinTopology, S: SoberSpace) -> set[int]:
    """{t(E) : E closed in T} as masks over the points of t(X)."""
    return {mask_of(i for i, Z in enumerate(S.points) if Z & ~E == 0) for E in T.closed_sets}


# -- homeomorphism ----------------------------------------------------------


def _signature(T: FinTopology, x: int) -> tuple[int, int]:
    return popcount(T.up[x]), popcount(T.down[x])


def is_homeomorphic(T1: FinTopology, T2: FinTopology) -> tuple[bool, tuple[int, ...] | None]:
    """Bijection search preserving the specialization preorder both ways.

    Pruned by minimal-open and closure size multisets and, for small
    spaces, open-set counts.
    """
    if T1.n != T2.n:
        return False, None
    n = T1.n
    sig1 = [_signature(T1, x) for x in range(n)]
    sig2 = [_signature(T2, y) for y in range(n)]
    if Counter(sig1) != Counter(sig2):
        return False, None
    if n <= EXHAUSTIVE_CAP and len(T1.opens) != len(T2.opens):
        return False, None
    order = sorted(range(n), key=lambda x: (-sig1[x][0] - sig1[x][1], x))
    cands = {x: [y for y in range(n) if sig2[y] == sig1[x]] for x in range(n)}
    phi = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for y in cands[x]:
            if used[y]:
                continue
            ok = True
            for j in range(k):
                z = order[j]
                w = phi[z]
                if T1.leq(x, z) != T2.leq(y, w) or T1.leq(z, x) != T2.leq(w, y):
                    ok = False
                    break
            if ok:
                phi[x] = y
                used[y] = True
                if extend(k + 1):
                    return True
                phi[x] = -1
                used[y] = False
        return False

    if extend(0):
        return True, tuple(phi)
    return False, None


def is_homeomorphism(phi: Sequence[int], T1: FinTopology, T2: FinTopology) -> bool:
    if sorted(phi) != list(range(T2.n)) or T1.n != T2.n:
        return False
    f = MapTable(T1.n, T2.n, tuple(phi))
    inv = [0] * T1.n
    for x, y in enumerate(phi):
        inv[y] = x
    g = MapTable(T2.n, T1.n, tuple(inv))
    return bool(is_continuous(f, T1, T2)) and bool(is_continuous(g, T2, T1))


# -- predicates -------------------------------------------------------------


@dataclass(frozen=True)
class SpacePredicates:
    hausdorff: bool
    t0: bool
    discrete: bool
    trivial: bool
    connected: bool
    totally_disconnected: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def is_hausdorff(T: FinTopology) -> bool:
    """Two distinct points are separated iff their minimal opens are disjoint."""
    return all(T.up[x] & T.up[y] == 0 for x in range(T.n) for y in range(x))


def space_predicates(T: FinTopology) -> SpacePredicates:
    comps = _components(T)
    return SpacePredicates(
        hausdorff=is_hausdorff(T),
        t0=T.is_t0,
        discrete=T.is_discrete,
        trivial=T.is_trivial,
        connected=len(comps) == 1,
        totally_disconnected=all(popcount(c) == 1 for c in comps),
    )


def is_connected_subset(T: FinTopology, subset: Iterable[int]) -> bool:
    sub, _ = subspace_topology(T, subset)
    return len(_components(sub)) == 1


# -- vectorised monotonicity ------------------------------------------------


def preorder_generators(T: FinTopology) -> list[tuple[int, int]]:
    """Pairs whose reflexive-transitive closure is the specialization order:
    a cycle through each equivalence class plus the covering relations
    between class representatives."""
    classes: dict[int, list[int]] = {}
    for x in range(T.n):
        classes.setdefault(T.up[x], []).append(x)
    gens = []
    for members in classes.values():
        if len(members) > 1:
            gens += list(zip(members, members[1:] + members[:1]))
    reps = {u: members[0] for u, members in classes.items()}
    for u, a in reps.items():
        above = [v for v in reps if v != u and v & ~u == 0]  # strictly above a
        for v in above:
            if not any(w != v and v & ~w == 0 for w in above):  # v covers u
                gens.append((a, reps[v]))
    return sorted(gens)


def power_generators(T: FinTopology, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Generating pairs (p, q) of the product order on T^k, points in
    row-major order: one coordinate moves along a generator."""
    gens = preorder_generators(T)
    n = T.n
    P, Q = [], []
    for pos in range(k):
        stride = n ** (k - 1 - pos)
        for p in range(n**k):
            digit = (p // stride) % n
            for a, b in gens:
                if a == digit:
                    P.append(p)
                    Q.append(p + (b - a) * stride)
    return np.array(P, dtype=np.int64), np.array(Q, dtype=np.int64)


def monotone_tables(tables: np.ndarray, P: np.ndarray, Q: np.ndarray, T_out: FinTopology) -> np.ndarray:
    """For each row f of ``tables``, whether f(p) <= f(q) on every pair."""
    L = T_out.leq_matrix
    if len(P) == 0 or L.all():
        return np.ones(tables.shape[0], dtype=bool)
    return L[tables[:, P], tables[:, Q]].all(axis=1)
