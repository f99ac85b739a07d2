"""Exhaustive and sampled sweeps over (ring, topology) pairs.

The corpus has four parts: every topology on a few small rings and groups,
the adic topologies of every ideal of Z/n and of small product rings,
ring morphisms between small Z/n, and the zerodivisor bound over Z/n and
product rings up to order 100. Every theorem predicate in ``topalg`` is run
over the parts it applies to and the verdicts are tallied.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterator, Sequence

from . import fintop as ft
from . import topalg as ta
from .bits import elements_of, mask_of
from .finring import (
    FiniteGroup,
    FiniteRing,
    additive_group,
    all_ideals,
    finite_nonfield_criterion,
    ideal_from_elements,
    identity_morphism,
    make_ring,
    maximal_ideals,
    ring_morphisms,
    unit_group_as_group,
    units_group,
    zerodivisors,
)
from .fintop import FinTopology
from .reports import (
    HOLDS,
    UNMET,
    VIOLATION,
    BudgetExceeded,
    HypothesisError,
    Report,
    TheoremViolation,
    jsonable,
)

THEOREMS = {
    "zerodivisor-bound": "finite nonfield iff Z(R) finite and nonzero; |R| <= |Z(R)|^2",
    "adic-absolute": "the I-adic topology makes R an absolute topological ring",
    "tf-topological-group": "R* with the topology induced by a -> (a, a^-1) is a topological group",
    "absolute-iff-tf": "R* with the subspace topology is a topological group iff it equals the induced one",
    "product-ring": "products of topological rings are topological rings",
    "pointwise-operations": "pointwise sums and products of continuous maps into R are continuous",
    "monomial-continuity": "monomial maps G^n -> G are continuous",
    "polynomial-continuity": "polynomial maps R^n -> R are continuous",
    "power-neighborhood": "for U open around e there is an open V around e with V^n in U",
    "boolean-subspace": "idempotents with the subspace topology form a topological Boolean ring",
    "identity-component": "the identity component is a normal subgroup whose cosets are the components",
    "zero-component": "the zero component is an ideal whose cosets are the components",
    "adic-structure": "adic closures, point closures, components, t(R), idempotent and Hausdorff criteria",
    "dense-triviality": "dense identity means trivial topology; dense subgroups and trivial quotients",
    "closure-substructure": "closures of subgroups, ideals, multiplicative sets and subrings keep their kind",
    "hausdorff-discrete": "Hausdorff iff {e} closed; discrete iff some point is isolated",
    "group-closure": "closure(S) is the meet of S U; E K closed; G -> G/H closed",
    "weak-closed": "weak closed subgroups are closed; operation-closed finite subsets are closed subgroups",
    "adic-morphism": "f is I-adic/J-adic continuous iff f(I^n) lies in J for some n",
    "closed-multiplication": "when r -> rx is closed, Ann(x) is closed iff the space is Hausdorff",
    "coset-structure": "the minimal open set around e is a normal subgroup (an ideal) whose cosets are the minimal opens",
    "sierpinski-example": "Z/2 with the Sierpinski topology is not a topological ring",
}

EXHAUSTIVE_RINGS = ("Z/2", "Z/3", "Z/4", "Z/2 x Z/2", "Z/2[x]/(0,0,1)", "Z/2[x]/(1,1,1)", "Z/5")
UNIT_GROUP_SOURCES = ("Z/5", "Z/8", "Z/10", "Z/12")
ADIC_ZN_MAX = 24
ADIC_PRODUCT_MAX = 16
MORPHISM_N_MAX = 12
MAXIMAL_N_MAX = 30
BOUND_MAX = 100
POLY_ARITY2_MAX = 6
POLY_SAMPLE = 512
MONOMIAL_EXP = 3


@dataclass(frozen=True)
class SearchConfig:
    rings: tuple[str, ...] = EXHAUSTIVE_RINGS
    max_exhaustive: int = 5
    sample_budget: int = 0
    theorems: frozenset[str] | None = None
    workers: int = 1
    seed: int = 0
    adic_rings: tuple[str, ...] | None = None
    keep_findings: bool = False

    def __post_init__(self):
        if not 1 <= self.max_exhaustive <= ft.EXHAUSTIVE_CAP:
            raise ValueError(f"max_exhaustive must lie in 1..{ft.EXHAUSTIVE_CAP}")
        if self.theorems is not None:
            unknown = set(self.theorems) - set(THEOREMS)
            if unknown:
                raise ValueError(f"unknown theorem ids: {sorted(unknown)}")

    def wants(self, theorem: str) -> bool:
        return self.theorems is None or theorem in self.theorems


@dataclass
class Finding:
    ring: str
    topology: dict | None
    theorem: str
    verdict: str
    witness: Any = None
    task: tuple | None = None

    def to_dict(self) -> dict:
        return jsonable(self.__dict__)


@lru_cache(maxsize=None)
def ring_of(spec: str) -> FiniteRing:
    return make_ring(spec)


@lru_cache(maxsize=None)
def group_of(source: str) -> FiniteGroup:
    """``+R`` is the additive group of R, ``*R`` its unit group."""
    R = ring_of(source[1:])
    return additive_group(R) if source[0] == "+" else unit_group_as_group(R)


def topologies_for(size: int, config: SearchConfig) -> Iterator[FinTopology]:
    if size <= config.max_exhaustive:
        yield from ft.enumerate_topologies(size)
    elif size <= ft.EXHAUSTIVE_CAP and config.sample_budget:
        yield from ft.sample_topologies(size, config.sample_budget, config.seed)
    else:
        raise BudgetExceeded(f"size {size} exceeds the exhaustive limit {config.max_exhaustive} and sampling is off")


def _parallel_map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _is_topological_ring(item: tuple[str, tuple[int, ...]]) -> bool:
    spec, up = item
    return ta.check_topological_ring(ring_of(spec), FinTopology(len(up), up)).is_topological


def _is_topological_group(item: tuple[str, tuple[int, ...]]) -> bool:
    source, up = item
    return ta.check_topological_group(group_of(source), FinTopology(len(up), up)).is_topological


def enumerate_topological_rings(R: FiniteRing, config: SearchConfig = SearchConfig()) -> Iterator[ta.TopRing]:
    """Topological ring structures on R in enumeration order."""
    tops = list(topologies_for(R.size, config))
    if config.workers > 1 and R.spec:
        flags = _parallel_map(_is_topological_ring, [(R.spec, T.up) for T in tops], config.workers)
        for T, ok in zip(tops, flags):
            if ok:
                yield ta.check_topological_ring(R, T)
        return
    for T in tops:
        tr = ta.check_topological_ring(R, T)
        if tr.is_topological:
            yield tr


def enumerate_topological_groups(G: FiniteGroup, config: SearchConfig = SearchConfig()) -> Iterator[ta.TopGroup]:
    for T in topologies_for(G.size, config):
        tg = ta.check_topological_group(G, T)
        if tg.is_topological:
            yield tg


@dataclass
class NonAbsoluteSearch:
    """Topological rings on one ring whose unit subspace is not a
    topological group. An empty list is a result, not a proof."""

    ring: str
    search_space: int
    topological_rings: int
    findings: list[Finding]
    sampled: bool

    def __iter__(self):
        return iter(self.findings)

    def __len__(self):
        return len(self.findings)

    def to_dict(self) -> dict:
        return jsonable(
            {
                "ring": self.ring,
                "search_space": self.search_space,
                "sampled": self.sampled,
                "topological_rings": self.topological_rings,
                "non_absolute": [f.to_dict() for f in self.findings],
            }
        )


def find_non_absolute(R: FiniteRing, config: SearchConfig = SearchConfig()) -> NonAbsoluteSearch:
    tops = list(topologies_for(R.size, config))
    findings = []
    count = 0
    for tr in enumerate_topological_rings(R, SearchConfig(max_exhaustive=config.max_exhaustive,
                                                          sample_budget=config.sample_budget,
                                                          workers=config.workers, seed=config.seed)):
        count += 1
        report = ta.absolute_check(R, tr.topology)
        if not report.checks["units_topological_group"]:
            findings.append(Finding(R.spec, tr.topology.to_literal(), "absolute-iff-tf", report.verdict, report.witness))
    return NonAbsoluteSearch(R.spec, len(tops), count, findings, R.size > config.max_exhaustive)


# -- per-instance theorem batteries -------------------------------------------


def _finding(ring: str, T: FinTopology | None, theorem: str, fn: Callable[[], Any]) -> Finding:
    """Run one predicate and turn its outcome into a Finding."""
    literal = T.compact_literal() if T is not None else None
    try:
        result = fn()
    except TheoremViolation as exc:
        return Finding(ring, literal, theorem, VIOLATION, exc.report.witness)
    except HypothesisError as exc:
        return Finding(ring, literal, theorem, UNMET, str(exc))
    report = result[-1] if isinstance(result, tuple) else result
    verdict = report.verdict if isinstance(report, Report) else HOLDS
    witness = report.witness if isinstance(report, Report) and verdict == VIOLATION else None
    return Finding(ring, literal, theorem, verdict, witness)


def _coset_structure_group(G: FiniteGroup, T: FinTopology) -> Report:
    tg = ta.check_topological_group(G, T)
    report = Report("coset-structure", details={"group": G.name, "min_open_e": list(tg.min_open_e)})
    if not tg.is_topological:
        report.verdict = UNMET
        return report
    report.require("normal_subgroup", tg.min_open_is_normal_subgroup, list(tg.min_open_e))
    report.require("minimal_opens_are_cosets", tg.cosets_generate, [list(elements_of(u)) for u in T.up])
    return report.finish()


def _coset_structure_ring(R: FiniteRing, T: FinTopology) -> Report:
    report = Report("coset-structure", details={"ring": R.spec})
    if not ta.check_topological_ring(R, T).is_topological:
        report.verdict = UNMET
        return report
    N = T.up[R.zero]
    report.require("ideal", ta.is_ideal(R, elements_of(N)), list(elements_of(N)))
    report.require("minimal_opens_are_cosets", all(T.up[x] == mask_of(R.plus[x][i] for i in elements_of(N)) for x in range(R.size)))
    return report.finish()


def _pointwise_maps(R: FiniteRing) -> list[tuple[int, ...]]:
    return [
        tuple(range(R.size)),
        tuple(R.negation),
        tuple(R.times[x][x] for x in range(R.size)),
        (R.one,) * R.size,
    ]


def ring_battery(R: FiniteRing, T: FinTopology, config: SearchConfig, label: str | None = None) -> list[Finding]:
    """Every ring-level predicate on one topological ring."""
    label = label or R.spec
    out = []

    def run(theorem: str, fn: Callable[[], Any]) -> None:
        if config.wants(theorem):
            out.append(_finding(label, T, theorem, fn))

    run("coset-structure", lambda: _coset_structure_ring(R, T))
    run("absolute-iff-tf", lambda: ta.absolute_check(R, T))
    run("tf-topological-group", lambda: ta.units_topologies(R, T))
    run("boolean-subspace", lambda: ta.boolean_subspace_check(R, T))
    run("zero-component", lambda: ta.identity_component(R, T))
    run("dense-triviality", lambda: ta.dense_triviality(R, T))
    for J in all_ideals(R):
        run("dense-triviality", lambda J=J: ta.dense_triviality(R, T, J.elements))
    for kind in ("ideal", "multiplicative-set", "subring"):
        for S in ta.substructures(R, kind):
            run("closure-substructure", lambda S=S, kind=kind: ta.closure_substructure(R, T, elements_of(S), kind))
    for x in zerodivisors(R):
        if x != R.zero:
            run("closed-multiplication", lambda x=x: ta.koh_hypotheses(R, T, x))
    maps = _pointwise_maps(R)
    for f, g in itertools.product(maps, repeat=2):
        run("pointwise-operations", lambda f=f, g=g: ta.pointwise_check(T, f, g, R, T))
    run("polynomial-continuity", lambda: ta.polynomial_sweep(R, T, degree=3, arity=1))
    if R.size <= POLY_ARITY2_MAX:
        run("polynomial-continuity", lambda: ta.polynomial_sweep(R, T, degree=3, arity=2))
    else:
        run("polynomial-continuity", lambda: ta.polynomial_sample(R, T, degree=3, arity=2, count=POLY_SAMPLE))
    return out


def group_battery(G: FiniteGroup, T: FinTopology, config: SearchConfig, label: str | None = None) -> list[Finding]:
    """Every group-level predicate on one topological group."""
    label = label or G.name
    out = []

    def run(theorem: str, fn: Callable[[], Any]) -> None:
        if config.wants(theorem):
            out.append(_finding(label, T, theorem, fn))

    subgroups = G.subgroups()
    run("coset-structure", lambda: _coset_structure_group(G, T))
    run("identity-component", lambda: ta.identity_component(G, T))
    run("hausdorff-discrete", lambda: ta.hausdorff_discrete_criteria(G, T))
    run("dense-triviality", lambda: ta.dense_triviality(G, T))
    for H in subgroups:
        run("dense-triviality", lambda H=H: ta.dense_triviality(G, T, elements_of(H)))
    for kind in ("subgroup", "normal-subgroup"):
        for H in ta.substructures(G, kind):
            run("closure-substructure", lambda H=H, kind=kind: ta.closure_substructure(G, T, elements_of(H), kind))
    subsets = range(1, 1 << G.size) if G.size <= 8 else [1 << x for x in range(G.size)] + list(subgroups)
    for S in subsets:
        run("group-closure", lambda S=S: ta.group_closure_formula(G, T, elements_of(S)))
    closed_under_op = [S for S in subsets if G.set_product(S, S) & ~S == 0]
    for H in closed_under_op:
        run("weak-closed", lambda H=H: ta.weak_closed_check(G, T, elements_of(H)))
    run("monomial-continuity", lambda: ta.monomial_sweep(G, T, MONOMIAL_EXP, 2))
    for U in ta.neighbourhoods(T, G.identity):
        for n in (1, 2, 3):
            run("power-neighborhood", lambda U=U, n=n: ta.power_neighborhood(G, T, elements_of(U), n))
    return out


# -- corpus tasks ---------------------------------------------------------------
# A task is a picklable tuple; workers rebuild rings and groups from specs.


def _task_ring(task, config: SearchConfig) -> list[Finding]:
    _, spec, up = task
    R, T = ring_of(spec), FinTopology(len(up), up)
    if not ta.check_topological_ring(R, T).is_topological:
        return []
    return ring_battery(R, T, config)


def _task_group(task, config: SearchConfig) -> list[Finding]:
    _, source, up = task
    G, T = group_of(source), FinTopology(len(up), up)
    if not ta.check_topological_group(G, T).is_topological:
        return []
    return group_battery(G, T, config)


def _task_adic(task, config: SearchConfig) -> list[Finding]:
    _, spec, gens = task
    R = ring_of(spec)
    I = ideal_from_elements(R, gens)
    label = f"{spec} ({','.join(map(str, I.elements))})-adic"
    out = []
    if config.wants("adic-absolute"):
        out.append(_finding(label, None, "adic-absolute", lambda: ta.adic_topology(R, I).report))
    T = ft.FinTopology(R.size, ta.adic_up_masks(R, ta.ideal_power_chain(R, I).stable))
    if config.wants("adic-structure"):
        out.append(_finding(label, T, "adic-structure", lambda: ta.adic_structure_theorems(R, I)))
    out += ring_battery(R, T, config, label)
    out += group_battery(additive_group(R), T, config, label + " (+)")
    UG = unit_group_as_group(R)
    sub, _ = ft.subspace_topology(T, units_group(R).elements)
    out += group_battery(UG, sub, config, label + " (*)")
    return out


def _task_product(task, config: SearchConfig) -> list[Finding]:
    _, s1, up1, s2, up2 = task
    T1, T2 = FinTopology(len(up1), up1), FinTopology(len(up2), up2)
    if not config.wants("product-ring"):
        return []
    label = f"{s1} x {s2}"
    return [_finding(label, ft.product_topology(T1, T2), "product-ring",
                     lambda: ta.product_ring_check(ring_of(s1), T1, ring_of(s2), T2))]


def _task_morphisms(task, config: SearchConfig) -> list[Finding]:
    _, n, m = task
    if not config.wants("adic-morphism"):
        return []
    R, S = ring_of(f"Z/{n}"), ring_of(f"Z/{m}")
    out = []
    for f in ring_morphisms(R, S):
        for I in all_ideals(R):
            for J in all_ideals(S):
                out.append(_finding(f"Z/{n} -> Z/{m}", None, "adic-morphism", lambda: ta.adic_morphism_continuity(f, I, J)))
    return out


def _task_maximal(task, config: SearchConfig) -> list[Finding]:
    _, n = task
    if not config.wants("adic-morphism"):
        return []
    R = ring_of(f"Z/{n}")
    idm = identity_morphism(R)
    maxl = maximal_ideals(R)
    return [
        _finding(R.spec, None, "adic-morphism", lambda p=p, q=q: ta.adic_morphism_continuity(idm, p, q))
        for p in maxl
        for q in maxl
    ]


def _task_bound(task, config: SearchConfig) -> list[Finding]:
    _, spec = task
    if not config.wants("zerodivisor-bound"):
        return []
    return [_finding(spec, None, "zerodivisor-bound", lambda: finite_nonfield_criterion(ring_of(spec)))]


def _task_sierpinski(task, config: SearchConfig) -> list[Finding]:
    if not config.wants("sierpinski-example"):
        return []
    return [_finding("Z/2", ft.sierpinski(), "sierpinski-example", sierpinski_control)]


def sierpinski_control() -> Report:
    """Addition on Z/2 is discontinuous for {0} open: f^-1({0}) is the
    diagonal, which is not open in the product."""
    R, S = make_ring("Z/2"), ft.sierpinski()
    tr = ta.check_topological_ring(R, S)
    report = Report("sierpinski-example", details=tr.to_dict())
    report.require("not_topological_ring", not tr.is_topological)
    report.require("witness_open", tr.witnesses.get("add", {}).get("open") == [0], tr.witnesses)
    report.require("witness_preimage", tr.witnesses.get("add", {}).get("preimage") == [[0, 0], [1, 1]], tr.witnesses)
    return report.finish()


_DISPATCH = {
    "ring": _task_ring,
    "group": _task_group,
    "adic": _task_adic,
    "product": _task_product,
    "morphisms": _task_morphisms,
    "maximal": _task_maximal,
    "bound": _task_bound,
    "sierpinski": _task_sierpinski,
}


def _execute(args) -> list[Finding]:
    task, config = args
    findings = _DISPATCH[task[0]](task, config)
    for f in findings:
        f.task = task
    return findings


def product_specs(max_size: int, min_factors: int = 2) -> list[str]:
    """Products of Z/a factors (a >= 2, nondecreasing) of order <= max_size."""
    out = []

    def grow(factors: list[int], size: int) -> None:
        if len(factors) >= min_factors:
            out.append((size, " x ".join(f"Z/{a}" for a in factors)))
        start = factors[-1] if factors else 2
        for a in range(start, max_size // size + 1):
            grow(factors + [a], size * a)

    grow([], 1)
    return [spec for _, spec in sorted(out)]


def adic_corpus() -> list[str]:
    return [f"Z/{n}" for n in range(2, ADIC_ZN_MAX + 1)] + product_specs(ADIC_PRODUCT_MAX)


def bound_corpus() -> list[str]:
    return [f"Z/{n}" for n in range(2, BOUND_MAX + 1)] + product_specs(BOUND_MAX)


def group_sources(config: SearchConfig, extra: Sequence[str] = UNIT_GROUP_SOURCES) -> list[str]:
    """Additive and unit groups of the swept rings plus the unit groups of
    ``extra``, keeping those small enough for exhaustive enumeration."""
    out = []
    for spec in config.rings:
        out.append("+" + spec)
        out.append("*" + spec)
    for spec in extra:
        out.append("*" + spec)
    seen, keep = set(), []
    for src in out:
        G = group_of(src)
        if src not in seen and G.size <= config.max_exhaustive:
            seen.add(src)
            keep.append(src)
    return keep


def build_tasks(config: SearchConfig, fixed_families: bool = True, bound_rings: Sequence[str] | None = None) -> list[tuple]:
    """Every corpus task in canonical order.

    ``fixed_families`` adds the Sierpinski control, the unit-group sources,
    product pairs, and the Z/n morphism families; a caller narrowing the
    corpus to chosen rings turns it off.
    """
    tasks: list[tuple] = [("sierpinski",)] if fixed_families else []
    tasks += [("bound", s) for s in (bound_rings if bound_rings is not None else bound_corpus())]
    for spec in config.rings:
        R = ring_of(spec)
        tasks += [("ring", spec, T.up) for T in topologies_for(R.size, config)]
    sources = group_sources(config) if fixed_families else group_sources(config, extra=())
    for src in sources:
        tasks += [("group", src, T.up) for T in topologies_for(group_of(src).size, config)]
    for spec in config.adic_rings if config.adic_rings is not None else adic_corpus():
        R = ring_of(spec)
        tasks += [("adic", spec, J.elements) for J in all_ideals(R)]
    if not fixed_families:
        return tasks
    tops = {}
    for spec in config.rings:
        R = ring_of(spec)
        if R.size <= 4:
            tops[spec] = [tr.topology.up for tr in enumerate_topological_rings(R, SearchConfig(max_exhaustive=config.max_exhaustive))]
    for s1, s2 in itertools.product(tops, repeat=2):
        if ring_of(s1).size * ring_of(s2).size <= 16:
            tasks += [("product", s1, u1, s2, u2) for u1 in tops[s1] for u2 in tops[s2]]
    for n in range(1, MORPHISM_N_MAX + 1):
        tasks += [("morphisms", n, m) for m in range(1, n + 1) if n % m == 0]
    tasks += [("maximal", n) for n in range(2, MAXIMAL_N_MAX + 1)]
    return tasks


@dataclass
class CorpusReport:
    counts: dict[str, dict[str, int]]
    violations: list[Finding]
    tasks: int
    elapsed: float
    theorems: list[str]
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def total(self, verdict: str) -> int:
        return sum(c.get(verdict, 0) for c in self.counts.values())

    def to_dict(self) -> dict:
        out = {
            "ok": self.ok,
            "tasks": self.tasks,
            "elapsed_seconds": round(self.elapsed, 3),
            "theorems": {t: {"statement": THEOREMS[t], **self.counts.get(t, {})} for t in self.theorems},
            "violations": [f.to_dict() for f in self.violations],
        }
        if self.findings:
            out["findings"] = [f.to_dict() for f in self.findings]
        return jsonable(out)

    def write_json(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def run_tasks(tasks: Sequence[tuple], config: SearchConfig) -> list[list[Finding]]:
    return _parallel_map(_execute, [(t, config) for t in tasks], config.workers)


def theorem_corpus_report(config: SearchConfig = SearchConfig(), tasks: Sequence[tuple] | None = None) -> CorpusReport:
    """Run the selected predicates over the corpus and tally verdicts."""
    start = time.perf_counter()
    tasks = build_tasks(config) if tasks is None else list(tasks)
    selected = sorted(config.theorems) if config.theorems is not None else list(THEOREMS)
    counts = {t: {HOLDS: 0, UNMET: 0, VIOLATION: 0} for t in selected}
    violations, kept = [], []
    for batch in run_tasks(tasks, config):
        for f in batch:
            counts[f.theorem][f.verdict] += 1
            if f.verdict == VIOLATION:
                violations.append(f)
            if config.keep_findings:
                kept.append(f)
    return CorpusReport(counts, violations, len(tasks), time.perf_counter() - start, selected, kept)


def replay(finding: Finding) -> list[Finding]:
    """Re-run the task behind a finding with only its theorem selected."""
    if finding.task is None:
        raise ValueError("finding carries no task to replay")
    config = SearchConfig(theorems=frozenset([finding.theorem]))
    return [f for f in _execute((tuple(finding.task), config)) if f.ring == finding.ring]
