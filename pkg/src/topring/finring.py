"""Finite commutative unital rings stored as full Cayley tables.

Elements are the integers ``0..size-1``. ``Z/n`` uses residues, products
use row-major tuple order and ``Z/p[x]/(m)`` encodes ``a0 + a1 x + ...``
as ``a0 + a1 p + a2 p^2 + ...``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator

import numpy as np

from .bits import elements_of, mask_of
from .reports import HypothesisError, Report

SIZE_CAP = 256


class RingSpecError(ValueError):
    pass


class AxiomError(ValueError):
    def __init__(self, axiom: str, witness):
        super().__init__(f"{axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteRing:
    size: int
    add_table: np.ndarray
    mul_table: np.ndarray
    zero: int = 0
    one: int = 1
    spec: str = ""

    def __repr__(self):
        return f"FiniteRing({self.spec or self.size!r})"

    # Python-level rows; indexing lists is much faster than numpy scalars.
    @cached_property
    def plus(self) -> list[list[int]]:
        return self.add_table.tolist()

    @cached_property
    def times(self) -> list[list[int]]:
        return self.mul_table.tolist()

    @cached_property
    def negation(self) -> list[int]:
        neg = [0] * self.size
        for a in range(self.size):
            neg[a] = self.plus[a].index(self.zero)
        return neg

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def is_zero_ring(self) -> bool:
        return self.size == 1

    def add(self, a: int, b: int) -> int:
        return self.plus[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.times[a][b]

    def neg(self, a: int) -> int:
        return self.negation[a]

    def sub(self, a: int, b: int) -> int:
        return self.plus[a][self.negation[b]]

    def power(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = self.times[out][a]
        return out

    def scalar(self, k: int) -> int:
        """The image of the integer k."""
        out = self.zero
        step = self.one if k >= 0 else self.negation[self.one]
        for _ in range(abs(k)):
            out = self.plus[out][step]
        return out

    def additive_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.zero:
            x = self.plus[x][a]
            k += 1
        return k

    def check_axioms(self) -> None:
        """Exhaustive commutative-ring axiom check; raises AxiomError."""
        _check_ring_tables(self.add_table, self.mul_table, self.zero, self.one)

    @cached_property
    def is_field(self) -> bool:
        if self.size == 1:
            return False
        return all(self.one in self.times[a] for a in range(self.size) if a != self.zero)


def _first_false(ok: np.ndarray):
    if ok.all():
        return None
    idx = np.argwhere(~ok)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def _check_ring_tables(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> None:
    n = add.shape[0]
    for name, t in (("additive commutativity", add), ("multiplicative commutativity", mul)):
        w = _first_false(t == t.T)
        if w:
            raise AxiomError(name, w)
    r = np.arange(n)
    if not (add[zero] == r).all():
        raise AxiomError("additive identity", int(np.argmax(add[zero] != r)))
    if not (mul[one] == r).all():
        raise AxiomError("multiplicative identity", int(np.argmax(mul[one] != r)))
    if not (add == zero).any(axis=1).all():
        raise AxiomError("additive inverse", int(np.argmin((add == zero).any(axis=1))))
    # triple loops in chunks of first index to bound memory at size 256
    chunk = max(1, 2**20 // (n * n))
    for lo in range(0, n, chunk):
        a = slice(lo, min(n, lo + chunk))
        for name, t in (("additive associativity", add), ("multiplicative associativity", mul)):
            rows = t[a]
            lhs = t[rows]  # [a, b, c] -> (ab)c
            rhs = rows[:, t]  # [a, b, c] -> a(bc)
            w = _first_false(lhs == rhs)
            if w:
                raise AxiomError(name, (w[0] + lo, w[1], w[2]))
        rows = mul[a]
        lhs = rows[:, add]
        rhs = add[rows[:, :, None], rows[:, None, :]]
        w = _first_false(lhs == rhs)
        if w:
            raise AxiomError("distributivity", (w[0] + lo, w[1], w[2]))


def ring_from_tables(add, mul, zero: int = 0, one: int = 1, spec: str = "", check: bool = True) -> FiniteRing:
    add = np.asarray(add, dtype=np.int32)
    mul = np.asarray(mul, dtype=np.int32)
    n = add.shape[0]
    if add.shape != (n, n) or mul.shape != (n, n):
        raise AxiomError("table shape", (add.shape, mul.shape))
    if n == 0 or add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise AxiomError("closure", "entry out of range")
    add.setflags(write=False)
    mul.setflags(write=False)
    if check:
        _check_ring_tables(add, mul, zero, one)
    return FiniteRing(n, add, mul, zero, one, spec)


# -- construction -----------------------------------------------------------

_ZN = re.compile(r"^Z/(\d+)$")
_POLY = re.compile(r"^Z/(\d+)\[x\]/\(([^)]*)\)$")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _zn(n: int) -> tuple[np.ndarray, np.ndarray]:
    r = np.arange(n)
    return (r[:, None] + r[None, :]) % n, (r[:, None] * r[None, :]) % n


def _poly_quotient(p: int, coeffs: list[int]) -> tuple[np.ndarray, np.ndarray]:
    d = len(coeffs) - 1
    size = p**d
    vecs = [tuple((i // p**k) % p for k in range(d)) for i in range(size)]
    weights = [p**k for k in range(d)]

    def encode(v) -> int:
        return sum(c * w for c, w in zip(v, weights))

    def mulvec(u, v):
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    prod[i + j] = (prod[i + j] + a * b) % p
        # x^d = -(c0 + ... + c_{d-1} x^{d-1})
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(d):
                    prod[k - d + j] = (prod[k - d + j] - c * coeffs[j]) % p
        return prod[:d]

    add = np.empty((size, size), dtype=np.int32)
    mul = np.empty((size, size), dtype=np.int32)
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            add[i, j] = encode([(a + b) % p for a, b in zip(u, v)])
            mul[i, j] = encode(mulvec(u, v))
    return add, mul


def _product_tables(tables) -> tuple[np.ndarray, np.ndarray]:
    (add, mul), rest = tables[0], tables[1:]
    for add2, mul2 in rest:
        m = add2.shape[0]
        add = (add[:, None, :, None] * m + add2[None, :, None, :]).reshape(add.shape[0] * m, -1)
        mul = (mul[:, None, :, None] * m + mul2[None, :, None, :]).reshape(mul.shape[0] * m, -1)
    return add, mul


def _parse_factor(text: str) -> tuple[int, object]:
    m = _ZN.match(text)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise RingSpecError(f"modulus must be positive: {text!r}")
        return n, ("zn", n)
    m = _POLY.match(text)
    if m:
        p = int(m.group(1))
        if not _is_prime(p):
            raise RingSpecError(f"polynomial quotient needs a prime modulus, got {p}")
        try:
            coeffs = [int(c) % p for c in m.group(2).split(",")]
        except ValueError:
            raise RingSpecError(f"bad coefficient list in {text!r}") from None
        if len(coeffs) < 2:
            raise RingSpecError(f"polynomial must have degree >= 1: {text!r}")
        if coeffs[-1] != 1:
            raise RingSpecError(f"polynomial is not monic: {text!r}")
        return p ** (len(coeffs) - 1), ("poly", p, coeffs)
    raise RingSpecError(f"cannot parse ring factor {text!r}")


def make_ring(spec: str, cap: int = SIZE_CAP) -> FiniteRing:
    """Build a ring from ``Z/n``, ``A x B`` or ``Z/p[x]/(c0,...,1)``."""
    parts = [s.strip() for s in re.split(r"\s+x\s+", spec.strip())]
    if not parts or not all(parts):
        raise RingSpecError(f"empty factor in {spec!r}")
    parsed = [_parse_factor(p.replace(" ", "")) for p in parts]
    size = reduce(lambda a, b: a * b, (s for s, _ in parsed), 1)
    if size > cap:
        raise RingSpecError(f"ring {spec!r} has {size} elements, above the cap {cap}")
    tables = []
    for _, how in parsed:
        if how[0] == "zn":
            tables.append(_zn(how[1]))
        else:
            tables.append(_poly_quotient(how[1], how[2]))
    add, mul = _product_tables(tables)
    one = 0 if size == 1 else _product_one(parsed)
    canonical = " x ".join(p.replace(" ", "") for p in parts)
    return ring_from_tables(add, mul, 0, one, canonical)


def _product_one(parsed) -> int:
    one = 0
    for size, _ in parsed:
        one = one * size + (1 if size > 1 else 0)
    return one


def product_ring(*rings: FiniteRing) -> FiniteRing:
    add, mul = _product_tables([(r.add_table, r.mul_table) for r in rings])
    zero = one = 0
    for r in rings:
        zero = zero * r.size + r.zero
        one = one * r.size + r.one
    spec = " x ".join(r.spec for r in rings)
    return ring_from_tables(add, mul, zero, one, spec, check=False)


# -- ideals -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    elements: tuple[int, ...]

    @cached_property
    def mask(self) -> int:
        return mask_of(self.elements)

    def __contains__(self, x: int) -> bool:
        return (self.mask >> x) & 1 == 1

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring is self.ring and other.elements == self.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"Ideal({list(self.elements)})"

    @property
    def is_zero(self) -> bool:
        return self.elements == (self.ring.zero,)

    @property
    def is_whole(self) -> bool:
        return len(self.elements) == self.ring.size

    def cosets(self) -> list[tuple[int, ...]]:
        """Cosets ordered by their least element."""
        seen = 0
        out = []
        for a in range(self.ring.size):
            if not (seen >> a) & 1:
                c = tuple(sorted({self.ring.plus[a][i] for i in self.elements}))
                seen |= mask_of(c)
                out.append(c)
        return out

    def coset_of(self, a: int) -> tuple[int, ...]:
        return tuple(sorted({self.ring.plus[a][i] for i in self.elements}))


def _check_elements(ring: FiniteRing, xs: Iterable[int]) -> list[int]:
    xs = list(xs)
    for x in xs:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < ring.size:
            raise IndexError(f"element {x!r} out of range for ring of size {ring.size}")
    return [int(x) for x in xs]


def _additive_span(ring: FiniteRing, gens: set[int]) -> set[int]:
    span = {ring.zero}
    frontier = [ring.zero]
    gens = [g for g in gens if g != ring.zero]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = ring.plus[s][g]
                if t not in span:
                    span.add(t)
                    nxt.append(t)
        frontier = nxt
    return span


def ideal_generate(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens``."""
    gens = _check_elements(ring, gens)
    products = {ring.times[r][g] for g in gens for r in range(ring.size)}
    return Ideal(ring, tuple(sorted(_additive_span(ring, products))))


def ideal_from_elements(ring: FiniteRing, elements: Iterable[int]) -> Ideal:
    """Wrap an element set that must already be an ideal."""
    els = sorted(set(_check_elements(ring, elements)))
    if not is_ideal(ring, els):
        raise ValueError(f"{els} is not an ideal of {ring.spec}")
    return Ideal(ring, tuple(els))


def is_ideal(ring: FiniteRing, elements: Iterable[int]) -> bool:
    s = set(elements)
    if ring.zero not in s:
        return False
    return all(ring.plus[a][b] in s for a in s for b in s) and all(
        ring.times[r][a] in s for a in s for r in range(ring.size)
    )


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return ideal_generate(I.ring, set(I.elements) | set(J.elements))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    R = I.ring
    return Ideal(R, tuple(sorted(_additive_span(R, {R.times[a][b] for a in I for b in J}))))


def all_ideals(ring: FiniteRing) -> list[Ideal]:
    """Every ideal, ordered by (size, elements)."""
    zero = ideal_generate(ring, [])
    found = {zero.elements: zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for I in frontier:
            for x in range(ring.size):
                if x not in I:
                    J = ideal_generate(ring, list(I.elements) + [x])
                    if J.elements not in found:
                        found[J.elements] = J
                        nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda I: (len(I), I.elements))


def maximal_ideals(ring: FiniteRing) -> list[Ideal]:
    proper = [I for I in all_ideals(ring) if not I.is_whole]
    return [I for I in proper if not any(I.mask != J.mask and I <= J for J in proper)]


@dataclass(frozen=True)
class PowerChain:
    chain: tuple[Ideal, ...]
    stable_index: int
    stable: Ideal

    @property
    def nilpotent(self) -> bool:
        return self.stable.is_zero

    @property
    def idempotent(self) -> bool:
        return self.stable_index == 1

    def power(self, k: int) -> Ideal:
        """I^k for k >= 1; powers past the chain equal the stable ideal."""
        return self.chain[min(k, self.stable_index) - 1]


def ideal_power_chain(ring: FiniteRing, ideal: Ideal) -> PowerChain:
    """Powers I, I^2, ... up to the first m with I^m = I^(m+1)."""
    if ideal.ring is not ring:
        raise ValueError("ideal belongs to a different ring")
    chain = [ideal]
    while True:
        nxt = ideal_product(chain[-1], ideal)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return PowerChain(tuple(chain), len(chain), chain[-1])


def annihilator(ring: FiniteRing, x: int) -> Ideal:
    (x,) = _check_elements(ring, [x])
    els = [r for r in range(ring.size) if ring.times[r][x] == ring.zero]
    return ideal_from_elements(ring, els)


# -- units, zerodivisors, idempotents ---------------------------------------


@dataclass(frozen=True)
class UnitGroup:
    elements: tuple[int, ...]
    inverse: dict[int, int]


def units_group(ring: FiniteRing) -> UnitGroup:
    inverse = {}
    for a in range(ring.size):
        invs = [b for b in range(ring.size) if ring.times[a][b] == ring.one]
        if len(invs) > 1:
            raise AxiomError("inverse uniqueness", (a, invs))
        if invs:
            inverse[a] = invs[0]
    return UnitGroup(tuple(sorted(inverse)), inverse)


def zerodivisors(ring: FiniteRing) -> tuple[int, ...]:
    """Z(R) = {a : Ann(a) != 0}; contains 0 for nonzero rings."""
    z = ring.zero
    return tuple(
        a for a in range(ring.size) if any(ring.times[a][r] == z for r in range(ring.size) if r != z)
    )


def idempotents(ring: FiniteRing) -> tuple[int, ...]:
    return tuple(e for e in range(ring.size) if ring.times[e][e] == e)


@dataclass(frozen=True)
class BooleanRing:
    """Idempotents under e (+) f = e + f - 2ef and the ring product.

    Tables are indexed by position in ``elements``.
    """

    ring: FiniteRing
    elements: tuple[int, ...]
    xor_add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]

    def as_ring(self, check: bool = True) -> FiniteRing:
        pos = self.elements
        return ring_from_tables(
            self.xor_add, self.mul, pos.index(self.ring.zero), pos.index(self.ring.one),
            f"B({self.ring.spec})", check=check,
        )


def boolean_ring(ring: FiniteRing) -> BooleanRing:
    els = idempotents(ring)
    pos = {e: i for i, e in enumerate(els)}
    two = ring.scalar(2)
    xor, mul = [], []
    for e in els:
        xrow, mrow = [], []
        for f in els:
            ef = ring.times[e][f]
            xrow.append(pos[ring.sub(ring.plus[e][f], ring.times[two][ef])])
            mrow.append(pos[ef])
        xor.append(tuple(xrow))
        mul.append(tuple(mrow))
    b = BooleanRing(ring, els, tuple(xor), tuple(mul))
    b.as_ring(check=True)
    return b


# -- morphisms and quotients ------------------------------------------------


@dataclass(frozen=True, eq=False)
class RingMorphism:
    domain: FiniteRing
    codomain: FiniteRing
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def image(self, elements: Iterable[int]) -> set[int]:
        return {self.map[a] for a in elements}

    def verify(self) -> None:
        R, S, f = self.domain, self.codomain, self.map
        if len(f) != R.size or any(not 0 <= y < S.size for y in f):
            raise AxiomError("totality", f)
        if f[R.zero] != S.zero or f[R.one] != S.one:
            raise AxiomError("identity preservation", (f[R.zero], f[R.one]))
        for a in range(R.size):
            for b in range(R.size):
                if f[R.plus[a][b]] != S.plus[f[a]][f[b]]:
                    raise AxiomError("additivity", (a, b))
                if f[R.times[a][b]] != S.times[f[a]][f[b]]:
                    raise AxiomError("multiplicativity", (a, b))

    @property
    def kernel(self) -> Ideal:
        return ideal_from_elements(self.domain, [a for a in self.domain.elements if self.map[a] == self.codomain.zero])


def identity_morphism(ring: FiniteRing) -> RingMorphism:
    return RingMorphism(ring, ring, tuple(range(ring.size)))


def quotient_ring(ring: FiniteRing, ideal: Ideal) -> tuple[FiniteRing, RingMorphism]:
    """R/I with cosets numbered by least representative, plus R -> R/I."""
    cosets = ideal.cosets()
    index = [0] * ring.size
    for k, c in enumerate(cosets):
        for a in c:
            index[a] = k
    reps = [c[0] for c in cosets]
    add = [[index[ring.plus[a][b]] for b in reps] for a in reps]
    mul = [[index[ring.times[a][b]] for b in reps] for a in reps]
    q = ring_from_tables(add, mul, index[ring.zero], index[ring.one], f"({ring.spec})/{list(ideal.elements)}")
    if ring.size != len(ideal) * q.size:
        raise AxiomError("|R| = |I||R/I|", (ring.size, len(ideal), q.size))
    pi = RingMorphism(ring, q, tuple(index))
    pi.verify()
    return q, pi


def _morphism_search(R: FiniteRing, S: FiniteRing, bijective: bool) -> Iterator[tuple[int, ...]]:
    if bijective and R.size != S.size:
        return
    ordR = [R.additive_order(a) for a in R.elements]
    ordS = [S.additive_order(b) for b in S.elements]
    if bijective:
        if sorted(ordR) != sorted(ordS):
            return
        idemR = [R.times[a][a] == a for a in R.elements]
        idemS = [S.times[b][b] == b for b in S.elements]
        sqR = [R.times[a][a] == R.zero for a in R.elements]
        sqS = [S.times[b][b] == S.zero for b in S.elements]

        def allowed(a, b):
            return ordR[a] == ordS[b] and idemR[a] == idemS[b] and sqR[a] == sqS[b]
    else:

        def allowed(a, b):
            return ordR[a] % ordS[b] == 0

    def propagate(phi, used, pending):
        while pending:
            x, y = pending.pop()
            if phi[x] >= 0:
                if phi[x] != y:
                    return False
                continue
            if not allowed(x, y) or (bijective and used[y]):
                return False
            phi[x] = y
            if bijective:
                used[y] = True
            for z in range(R.size):
                fz = phi[z]
                if fz >= 0:
                    pending.append((R.plus[x][z], S.plus[y][fz]))
                    pending.append((R.times[x][z], S.times[y][fz]))
        return True

    def search(phi, used):
        try:
            x = phi.index(-1)
        except ValueError:
            yield tuple(phi)
            return
        for y in range(S.size):
            p, u = phi[:], used[:]
            if propagate(p, u, [(x, y)]):
                yield from search(p, u)

    phi, used = [-1] * R.size, [False] * S.size
    if propagate(phi, used, [(R.zero, S.zero), (R.one, S.one)]):
        yield from search(phi, used)


def ring_morphisms(R: FiniteRing, S: FiniteRing) -> list[RingMorphism]:
    """All unital ring morphisms R -> S by propagating backtracking."""
    out = []
    for phi in _morphism_search(R, S, bijective=False):
        f = RingMorphism(R, S, phi)
        f.verify()
        out.append(f)
    return out


def find_isomorphism(R: FiniteRing, S: FiniteRing) -> tuple[int, ...] | None:
    """A ring isomorphism R -> S or None.

    Backtracking with additive-order pruning; exponential in the worst case,
    fine at size <= 16 and for rings generated by few elements beyond that.
    """
    for phi in _morphism_search(R, S, bijective=True):
        RingMorphism(R, S, phi).verify()
        return phi
    return None


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on 0..size-1. ``labels[i]`` names element i in its source."""

    size: int
    op: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    labels: tuple[int, ...] = ()
    name: str = ""

    def __repr__(self):
        return f"FiniteGroup({self.name or self.size})"

    def mul(self, a: int, b: int) -> int:
        return self.op[a][b]

    def power(self, a: int, k: int) -> int:
        base = a if k >= 0 else self.inverse[a]
        out = self.identity
        for _ in range(abs(k)):
            out = self.op[out][base]
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.op[a][b] == self.op[b][a] for a in range(self.size) for b in range(a))

    def set_product(self, A: int, B: int) -> int:
        """AB for bitmask subsets."""
        out = 0
        for a in elements_of(A):
            row = self.op[a]
            for b in elements_of(B):
                out |= 1 << row[b]
        return out

    def set_inverse(self, A: int) -> int:
        return mask_of(self.inverse[a] for a in elements_of(A))

    def is_subgroup(self, H: int) -> bool:
        els = elements_of(H)
        if not els:
            return False
        return all((H >> self.op[a][self.inverse[b]]) & 1 for a in els for b in els)

    def is_normal(self, H: int) -> bool:
        if not self.is_subgroup(H):
            return False
        return all(
            (H >> self.op[self.op[g][h]][self.inverse[g]]) & 1 for g in range(self.size) for h in elements_of(H)
        )

    def generated_subgroup(self, gens: Iterable[int]) -> int:
        H = 1 << self.identity
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    k = self.op[h][g]
                    if not (H >> k) & 1:
                        H |= 1 << k
                        nxt.append(k)
            frontier = nxt
        return H

    def subgroups(self) -> list[int]:
        found = {1 << self.identity}
        frontier = list(found)
        while frontier:
            nxt = []
            for H in frontier:
                for x in range(self.size):
                    if not (H >> x) & 1:
                        K = self.generated_subgroup(list(elements_of(H)) + [x])
                        if K not in found:
                            found.add(K)
                            nxt.append(K)
            frontier = nxt
        return sorted(found, key=lambda m: (bin(m).count("1"), elements_of(m)))

    def left_cosets(self, H: int) -> list[tuple[int, ...]]:
        seen = 0
        out = []
        for g in range(self.size):
            if not (seen >> g) & 1:
                c = self.set_product(1 << g, H)
                seen |= c
                out.append(elements_of(c))
        return out

    @cached_property
    def is_simple(self) -> bool:
        if self.size == 1:
            return False
        full = (1 << self.size) - 1
        return all(H in (1 << self.identity, full) for H in self.subgroups() if self.is_normal(H))


def group_from_table(op, identity: int | None = None, labels=(), name: str = "") -> FiniteGroup:
    op = tuple(tuple(int(x) for x in row) for row in op)
    n = len(op)
    if n == 0 or any(len(row) != n or any(not 0 <= x < n for x in row) for row in op):
        raise ValueError("non-group table: not a closed square table")
    for a, b, c in itertools.product(range(n), repeat=3):
        if op[op[a][b]][c] != op[a][op[b][c]]:
            raise ValueError(f"non-group table: associativity fails at {(a, b, c)}")
    ids = [e for e in range(n) if all(op[e][a] == a == op[a][e] for a in range(n))]
    if not ids:
        raise ValueError("non-group table: no identity")
    e = ids[0] if identity is None else identity
    if e not in ids:
        raise ValueError("non-group table: given identity is not neutral")
    inverse = []
    for a in range(n):
        inv = [b for b in range(n) if op[a][b] == e]
        if not inv or op[inv[0]][a] != e:
            raise ValueError(f"non-group table: {a} has no inverse")
        inverse.append(inv[0])
    return FiniteGroup(n, op, e, tuple(inverse), tuple(labels) or tuple(range(n)), name)


def additive_group(ring: FiniteRing) -> FiniteGroup:
    return FiniteGroup(
        ring.size, tuple(map(tuple, ring.plus)), ring.zero, tuple(ring.negation),
        tuple(range(ring.size)), f"({ring.spec}, +)",
    )


def unit_group_as_group(ring: FiniteRing) -> FiniteGroup:
    """R* reindexed to 0..k-1; ``labels`` are the ring elements."""
    U = units_group(ring)
    pos = {u: i for i, u in enumerate(U.elements)}
    op = tuple(tuple(pos[ring.times[a][b]] for b in U.elements) for a in U.elements)
    inv = tuple(pos[U.inverse[a]] for a in U.elements)
    return FiniteGroup(len(U.elements), op, pos[ring.one], inv, U.elements, f"({ring.spec})*")


# -- the zerodivisor finiteness criterion -----------------------------------


def finite_nonfield_criterion(ring: FiniteRing) -> Report:
    """Finite nonfield iff Z(R) is finite and nonzero, with |R| <= |Z(R)|^2."""
    if ring.is_zero_ring:
        raise HypothesisError("the criterion is stated for nonzero rings; got the zero ring")
    report = Report("zerodivisor-bound")
    Z = zerodivisors(ring)
    nonfield = not ring.is_field
    z_nonzero = Z != (ring.zero,)
    report.details.update(size=ring.size, zerodivisors=len(Z))
    report.record("finite_nonfield", nonfield)
    report.record("zerodivisors_nonzero", z_nonzero)
    report.require("equivalence", nonfield == z_nonzero, {"Z": Z})
    if z_nonzero:
        report.require("bound", ring.size <= len(Z) ** 2, {"size": ring.size, "Z": len(Z)})
        report.details["bound_tight"] = ring.size == len(Z) ** 2
        # the proof's route: I = Ann(x) for some nonzero x in Z(R), |R| = |I| |R/I|
        x = next(a for a in Z if a != ring.zero)
        ann = annihilator(ring, x)
        report.require("annihilator_inside_Z", set(ann.elements) <= set(Z), x)
        report.require("index_formula", ring.size % len(ann) == 0 and ring.size // len(ann) <= len(Z), x)
    else:
        report.record("bound", None)
    return report.finish()
