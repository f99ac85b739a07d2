import json

import pytest

from topring import fintop as ft
from topring import search as se
from topring import topalg as ta
from topring.finring import all_ideals, make_ring
from topring.fintop import MapTable
from topring.reports import HOLDS, UNMET, VIOLATION, BudgetExceeded, Report


def preimage_oracle(R, T):
    TT = ft.product_topology(T, T)
    ok = True
    for table in (R.add_table, R.mul_table):
        f = MapTable(R.size**2, R.size, tuple(int(v) for v in table.ravel()))
        ok = ok and bool(ft.is_continuous_by_opens(f, TT, T))
    return ok


@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "Z/2 x Z/2", "Z/2[x]/(0,0,1)", "Z/2[x]/(1,1,1)"])
def test_topological_ring_counts_against_oracle(spec):
    R = make_ring(spec)
    found = [tr.topology for tr in se.enumerate_topological_rings(R)]
    expected = [T for T in ft.enumerate_topologies(R.size) if preimage_oracle(R, T)]
    assert found == expected
    # one topological ring structure per ideal, given by its cosets
    assert len(found) == len(all_ideals(R))


def test_z2_has_discrete_and_trivial_only():
    found = [tr.topology for tr in se.enumerate_topological_rings(make_ring("Z/2"))]
    assert sorted(T.opens for T in found) == [(0, 1, 2, 3), (0, 3)]


def test_topological_group_count_z4():
    G = se.group_of("+Z/4")
    assert len(list(se.enumerate_topological_groups(G))) == 3


def test_cap_requires_sampling():
    with pytest.raises(BudgetExceeded):
        list(se.enumerate_topological_rings(make_ring("Z/6")))
    cfg = se.SearchConfig(sample_budget=40, seed=1)
    found = list(se.enumerate_topological_rings(make_ring("Z/6"), cfg))
    assert all(tr.is_topological for tr in found)


def test_config_rejects_unknown_theorem():
    with pytest.raises(ValueError):
        se.SearchConfig(theorems=frozenset(["nope"]))


@pytest.mark.parametrize("spec, space", [("Z/2", 4), ("Z/4", 355), ("Z/2 x Z/2", 355), ("Z/5", 6942)])
def test_non_absolute_search(spec, space):
    result = se.find_non_absolute(make_ring(spec))
    assert result.search_space == space
    assert result.sampled is False
    # an empty list is recorded together with the space it covers
    assert len(result) == 0
    assert result.to_dict()["search_space"] == space


def test_worker_count_does_not_change_results():
    R = make_ring("Z/4")
    one = [tr.topology.up for tr in se.enumerate_topological_rings(R, se.SearchConfig(workers=1))]
    two = [tr.topology.up for tr in se.enumerate_topological_rings(R, se.SearchConfig(workers=2))]
    assert one == two
    cfg1 = se.SearchConfig(rings=("Z/3",), adic_rings=("Z/6",), keep_findings=True)
    cfg2 = se.SearchConfig(rings=("Z/3",), adic_rings=("Z/6",), keep_findings=True, workers=2)
    tasks = se.build_tasks(cfg1, fixed_families=False, bound_rings=["Z/6"])
    r1 = se.theorem_corpus_report(cfg1, tasks)
    r2 = se.theorem_corpus_report(cfg2, tasks)
    assert r1.counts == r2.counts
    assert [f.to_dict() for f in r1.findings] == [f.to_dict() for f in r2.findings]


def test_topology_counts_in_tasks_match_enumeration():
    cfg = se.SearchConfig(rings=("Z/4",), adic_rings=())
    tasks = se.build_tasks(cfg, fixed_families=False, bound_rings=[])
    assert sum(1 for t in tasks if t[0] == "ring") == ft.count_topologies(4)


def test_masked_corpus_report_on_adic_family():
    cfg = se.SearchConfig(rings=(), theorems=frozenset(["adic-absolute"]), adic_rings=("Z/12", "Z/2 x Z/4"))
    report = se.theorem_corpus_report(cfg, se.build_tasks(cfg, fixed_families=False, bound_rings=[]))
    assert report.ok
    assert report.counts["adic-absolute"][HOLDS] == len(all_ideals(make_ring("Z/12"))) + len(all_ideals(make_ring("Z/2 x Z/4")))
    assert set(report.counts) == {"adic-absolute"}


def test_report_json(tmp_path):
    cfg = se.SearchConfig(rings=("Z/2",), adic_rings=("Z/4",))
    report = se.theorem_corpus_report(cfg, se.build_tasks(cfg, fixed_families=False, bound_rings=["Z/4"]))
    path = tmp_path / "r.json"
    report.write_json(str(path))
    data = json.loads(path.read_text())
    assert data["ok"] is True and data["violations"] == []
    assert set(data["theorems"]) == set(se.THEOREMS)
    assert data["theorems"]["zerodivisor-bound"]["holds"] == 1


def test_sierpinski_control():
    rep = se.sierpinski_control()
    assert rep.verdict == HOLDS
    (f,) = se._execute((("sierpinski",), se.SearchConfig()))
    assert f.verdict == HOLDS and f.topology == ft.sierpinski().compact_literal()


def test_unmet_hypotheses_are_counted_not_asserted():
    # the trivial topology on Z/12 never makes r -> 6r a closed map
    cfg = se.SearchConfig(rings=(), theorems=frozenset(["closed-multiplication"]), adic_rings=("Z/12",), keep_findings=True)
    report = se.theorem_corpus_report(cfg, se.build_tasks(cfg, fixed_families=False, bound_rings=[]))
    assert report.ok
    assert report.counts["closed-multiplication"][UNMET] > 0


def test_violation_carries_replayable_witness(monkeypatch):
    def broken(G, T):
        rep = Report("hausdorff-discrete")
        rep.require("forced", T.is_discrete, {"up": list(T.up)})
        return rep.finish()

    monkeypatch.setattr(ta, "hausdorff_discrete_criteria", broken)
    cfg = se.SearchConfig(rings=(), theorems=frozenset(["hausdorff-discrete"]), adic_rings=())
    tasks = [("group", "+Z/2", T.up) for T in ft.enumerate_topologies(2)]
    report = se.theorem_corpus_report(cfg, tasks)
    assert not report.ok
    (bad,) = report.violations
    assert bad.verdict == VIOLATION and bad.witness["check"] == "forced"
    T = ft.from_literal(bad.topology)
    assert T.is_trivial
    again = se.replay(bad)
    assert [f.verdict for f in again] == [VIOLATION]
    assert again[0].witness == bad.witness


def test_replay_needs_a_task():
    with pytest.raises(ValueError):
        se.replay(se.Finding("Z/2", None, "adic-absolute", HOLDS))


def test_product_specs():
    assert se.product_specs(8) == ["Z/2 x Z/2", "Z/2 x Z/3", "Z/2 x Z/2 x Z/2", "Z/2 x Z/4"]
    assert all(make_ring(s).size <= 16 for s in se.product_specs(16))
