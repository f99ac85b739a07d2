"""Command-line front end.

Exit codes: 0 when every asserted conclusion holds, 1 for usage or parse
errors, 2 when a theorem check is violated, 3 when a budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import fintop as ft
from . import search
from . import topalg as ta
from .finring import (
    AxiomError,
    RingSpecError,
    additive_group,
    all_ideals,
    finite_nonfield_criterion,
    ideal_generate,
    idempotents,
    make_ring,
    maximal_ideals,
    unit_group_as_group,
    units_group,
    zerodivisors,
)
from .fintop import TopologyError
from .reports import BudgetExceeded, HypothesisError, TheoremViolation, jsonable

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_generators(text: str) -> list[int]:
    try:
        gens = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"ideal generators must be comma-separated integers, got {text!r}") from None
    if not gens:
        raise UsageError("at least one ideal generator is required")
    return gens


def parse_topology(text: str, size: int) -> ft.FinTopology:
    try:
        T = ft.from_literal(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"topology is not valid JSON: {exc}") from None
    except (KeyError, TypeError):
        raise UsageError(
            'topology must look like {"n": 2, "opens": [[], [0], [0, 1]]} or {"n": 2, "up": [[0], [0, 1]]}'
        ) from None
    if T.n != size:
        raise UsageError(f"topology has {T.n} points but the carrier has {size}")
    return T


# -- commands -------------------------------------------------------------------


def cmd_ring_info(args) -> dict:
    R = make_ring(args.spec)
    U = units_group(R)
    crit = finite_nonfield_criterion(R) if not R.is_zero_ring else None
    return {
        "ring": R.spec,
        "size": R.size,
        "field": R.is_field,
        "units": list(U.elements),
        "zerodivisors": list(zerodivisors(R)),
        "idempotents": list(idempotents(R)),
        "ideals": [list(J.elements) for J in all_ideals(R)],
        "maximal_ideals": [list(M.elements) for M in maximal_ideals(R)],
        "reports": [crit.to_dict()] if crit else [],
    }


def cmd_adic_report(args) -> dict:
    R = make_ring(args.ring)
    I = ideal_generate(R, parse_generators(args.ideal))
    adic = ta.adic_topology(R, I)
    structure = ta.adic_structure_theorems(R, I)
    T = adic.topology
    part, _ = ft.pi0(T)
    absolute = ta.absolute_check(R, T)
    return {
        "ring": R.spec,
        "ideal": list(I.elements),
        "power_chain": [list(J.elements) for J in adic.chain.chain],
        "stable_ideal": list(adic.stable.elements),
        "nilpotent": adic.chain.nilpotent,
        "idempotent": adic.chain.idempotent,
        "topology": T.to_literal(),
        "discrete": T.is_discrete,
        "hausdorff": structure.details["hausdorff"],
        "pi0_size": len(part.blocks),
        "components": [list(b) for b in part.blocks],
        "absolute": absolute.checks["units_topological_group"],
        "reports": [adic.report.to_dict(), structure.to_dict(), absolute.to_dict()],
    }


def cmd_topology_enumerate(args) -> dict:
    if args.size < 0:
        raise UsageError("size must be non-negative")
    if args.count_only:
        return {"size": args.size, "count": ft.count_topologies(args.size)}
    tops = [T.to_literal() for T in ft.enumerate_topologies(args.size)]
    return {"size": args.size, "count": len(tops), "topologies": tops}


def cmd_check(args) -> dict:
    R = make_ring(args.ring)
    if args.what == "topring":
        T = parse_topology(args.topology, R.size)
        tr = ta.check_topological_ring(R, T)
        return {"check": "topring", "ring": R.spec, "verdict": "pass" if tr.is_topological else "fail", **tr.to_dict()}
    if args.what == "topgroup":
        G = unit_group_as_group(R) if args.group == "units" else additive_group(R)
        T = parse_topology(args.topology, G.size)
        tg = ta.check_topological_group(G, T)
        out = {"check": "topgroup", "ring": R.spec, "verdict": "pass" if tg.is_topological else "fail", **tg.to_dict()}
        if args.group == "units":
            out["labels"] = list(G.labels)
        return out
    T = parse_topology(args.topology, R.size)
    report = ta.absolute_check(R, T)
    absolute = report.checks["units_topological_group"]
    return {"check": "absolute", "ring": R.spec, "verdict": "pass" if absolute else "fail", "reports": [report.to_dict()]}


def cmd_search_non_absolute(args) -> dict:
    R = make_ring(args.ring)
    config = search.SearchConfig(max_exhaustive=args.max_size, workers=args.workers)
    return search.find_non_absolute(R, config).to_dict()


def _split_rings(values: Sequence[str] | None) -> list[str]:
    out = []
    for v in values or []:
        out += [s.strip() for s in v.split(";") if s.strip()]
    return out


def cmd_suite_run(args) -> dict:
    theorems = None
    if args.theorems:
        theorems = frozenset(t.strip() for t in args.theorems.split(",") if t.strip())
        unknown = theorems - set(search.THEOREMS)
        if unknown:
            raise UsageError(f"unknown theorem ids {sorted(unknown)}; known: {', '.join(search.THEOREMS)}")
    rings = _split_rings(args.rings)
    if rings:
        for spec in rings:
            make_ring(spec)
        small = tuple(s for s in rings if search.ring_of(s).size <= args.max_size)
        config = search.SearchConfig(rings=small, max_exhaustive=args.max_size, theorems=theorems,
                                     workers=args.workers, adic_rings=tuple(rings))
        tasks = search.build_tasks(config, fixed_families=False, bound_rings=rings)
    else:
        config = search.SearchConfig(max_exhaustive=args.max_size, theorems=theorems, workers=args.workers)
        tasks = None
    report = search.theorem_corpus_report(config, tasks)
    if args.json:
        report.write_json(args.json)
    return report.to_dict()


# -- output ---------------------------------------------------------------------


def _render_text(payload: dict, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines += _render_text(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines += _render_text(item, indent + 1)
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key}: {json.dumps(value, separators=(',', ':'))}")
    return lines


def emit(payload: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    payload = jsonable(payload)
    if fmt == "json":
        json.dump(payload, stream, indent=2)
        stream.write("\n")
    else:
        stream.write("\n".join(_render_text(payload)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="topring", description="Finite topological rings: constructions and theorem checks.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    ring = verbs.add_parser("ring").add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = ring.add_parser("info", help="units, zerodivisors, idempotents and ideals")
    info.add_argument("spec")
    info.set_defaults(fn=cmd_ring_info)

    adic = verbs.add_parser("adic").add_subparsers(dest="action", required=True, parser_class=_Parser)
    rep = adic.add_parser("report", help="the I-adic topology and its structure checks")
    rep.add_argument("--ring", required=True)
    rep.add_argument("--ideal", required=True, help="comma-separated generators")
    rep.set_defaults(fn=cmd_adic_report)

    top = verbs.add_parser("topology").add_subparsers(dest="action", required=True, parser_class=_Parser)
    en = top.add_parser("enumerate", help="all topologies on n points")
    en.add_argument("--size", type=int, required=True)
    en.add_argument("--count-only", action="store_true")
    en.set_defaults(fn=cmd_topology_enumerate)

    check = verbs.add_parser("check")
    check.add_argument("what", choices=("topring", "topgroup", "absolute"))
    check.add_argument("--ring", required=True)
    check.add_argument("--topology", required=True, help='JSON, e.g. {"n":2,"opens":[[],[0],[0,1]]}')
    check.add_argument("--group", choices=("additive", "units"), default="additive",
                       help="group for topgroup (default additive)")
    check.set_defaults(fn=cmd_check)

    srch = verbs.add_parser("search").add_subparsers(dest="action", required=True, parser_class=_Parser)
    na = srch.add_parser("non-absolute", help="topological rings whose unit subspace is not a topological group")
    na.add_argument("--ring", required=True)
    na.add_argument("--max-size", type=int, default=5)
    na.add_argument("--workers", type=int, default=1)
    na.set_defaults(fn=cmd_search_non_absolute)

    suite = verbs.add_parser("suite").add_subparsers(dest="action", required=True, parser_class=_Parser)
    run = suite.add_parser("run", help="run theorem checks over the corpus")
    run.add_argument("--theorems", help="comma-separated theorem ids")
    run.add_argument("--rings", nargs="+", help="ring specs; several may also be joined with ';'")
    run.add_argument("--json", help="write the report to this path")
    run.add_argument("--max-size", type=int, default=5)
    run.add_argument("--workers", type=int, default=1)
    run.set_defaults(fn=cmd_suite_run)
    return p


def _has_violation(payload: Any) -> bool:
    if isinstance(payload, dict):
        if payload.get("verdict") == "VIOLATION" or payload.get("ok") is False:
            return True
        return any(_has_violation(v) for v in payload.values())
    if isinstance(payload, list):
        return any(_has_violation(v) for v in payload)
    return False


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        payload = args.fn(args)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (RingSpecError, AxiomError, TopologyError, HypothesisError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except TheoremViolation as exc:
        emit({"verdict": "VIOLATION", "report": exc.report.to_dict()}, fmt, stdout)
        return EXIT_VIOLATION
    except BudgetExceeded as exc:
        stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    emit(payload, fmt, stdout)
    return EXIT_VIOLATION if _has_violation(payload) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
