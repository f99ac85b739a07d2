import io
import json
import re
import subprocess
import sys

import pytest

from topring import cli

SIERPINSKI = '{"n":2,"opens":[[],[0],[0,1]]}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call("--format", "json", *argv)
    return code, (json.loads(out) if out else None), err


def test_ring_info_z12():
    code, data, _ = call_json("ring", "info", "Z/12")
    assert code == 0
    assert data["size"] == 12
    assert data["units"] == [1, 5, 7, 11]
    assert data["zerodivisors"] == [0, 2, 3, 4, 6, 8, 9, 10]
    assert data["idempotents"] == [0, 1, 4, 9]


def test_adic_report_z12():
    code, data, _ = call_json("adic", "report", "--ring", "Z/12", "--ideal", "4")
    assert code == 0
    assert data["stable_ideal"] == [0, 4, 8]
    assert data["pi0_size"] == 4
    assert data["hausdorff"] is False
    assert data["absolute"] is True
    assert {r["theorem"] for r in data["reports"]} == {"adic-absolute", "adic-structure", "absolute-iff-tf"}


def test_check_topring_sierpinski():
    code, data, _ = call_json("check", "topring", "--ring", "Z/2", "--topology", SIERPINSKI)
    assert code == 0
    assert data["verdict"] == "fail"
    assert data["witnesses"]["add"]["open"] == [0]
    assert data["witnesses"]["add"]["preimage"] == [[0, 0], [1, 1]]


def test_check_topgroup_and_absolute():
    disc = '{"n":4,"up":[[0],[1],[2],[3]]}'
    code, data, _ = call_json("check", "topgroup", "--ring", "Z/4", "--topology", disc)
    assert code == 0 and data["verdict"] == "pass"
    code, data, _ = call_json("check", "topgroup", "--ring", "Z/5", "--group", "units", "--topology", disc)
    assert code == 0 and data["verdict"] == "pass" and data["labels"] == [1, 2, 3, 4]
    code, data, _ = call_json("check", "absolute", "--ring", "Z/4", "--topology", disc)
    assert code == 0 and data["verdict"] == "pass"


def test_topology_enumerate():
    code, data, _ = call_json("topology", "enumerate", "--size", "3", "--count-only")
    assert data == {"size": 3, "count": 29}
    code, data, _ = call_json("topology", "enumerate", "--size", "2")
    assert data["count"] == 4 and len(data["topologies"]) == 4


def test_search_non_absolute():
    code, data, _ = call_json("search", "non-absolute", "--ring", "Z/4")
    assert code == 0
    assert data["search_space"] == 355 and data["non_absolute"] == []


def test_suite_run_masked(tmp_path):
    path = tmp_path / "suite.json"
    code, data, _ = call_json("suite", "run", "--theorems", "adic-absolute,zerodivisor-bound",
                              "--rings", "Z/12", "Z/2 x Z/4", "--json", str(path))
    assert code == 0 and data["ok"] is True
    assert data["theorems"]["adic-absolute"]["holds"] == 6 + 6
    assert data["theorems"]["zerodivisor-bound"]["holds"] == 2
    assert json.loads(path.read_text()) == data


def test_semicolon_separated_rings():
    code, data, _ = call_json("suite", "run", "--theorems", "zerodivisor-bound", "--rings", "Z/4;Z/6")
    assert code == 0 and data["theorems"]["zerodivisor-bound"]["holds"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["ring", "info", "Z/0"],
        ["ring", "frobnicate"],
        ["adic", "report", "--ring", "Z/12", "--ideal", "a,b"],
        ["check", "topring", "--ring", "Z/2", "--topology", "{not json"],
        ["check", "topring", "--ring", "Z/3", "--topology", SIERPINSKI],
        ["check", "topring", "--ring", "Z/2", "--topology", '{"n":2,"opens":[[0],[0,1]]}'],
        ["suite", "run", "--theorems", "no-such-theorem"],
        [],
    ],
)
def test_usage_errors_exit_1(argv):
    code, _, err = call(*argv)
    assert code == 1 and err


def test_budget_exit_3(monkeypatch):
    monkeypatch.setenv("TOPRING_BUDGET", "10")
    code, _, err = call("suite", "run", "--theorems", "polynomial-continuity", "--rings", "Z/4")
    assert code == 3 and "budget" in err


def test_search_beyond_cap_exits_3():
    code, _, _ = call("search", "non-absolute", "--ring", "Z/6")
    assert code == 3


def test_violation_exits_2(monkeypatch):
    from topring import topalg as ta
    from topring.reports import Report

    def broken(R, I):
        rep = Report("adic-structure")
        rep.require("forced", False, {"ideal": list(I.elements)})
        return rep.finish()

    monkeypatch.setattr(ta, "adic_structure_theorems", broken)
    code, out, _ = call("--format", "json", "adic", "report", "--ring", "Z/4", "--ideal", "2")
    assert code == 2
    data = json.loads(out)
    assert data["verdict"] == "VIOLATION" and data["report"]["witness"]["check"] == "forced"


def test_printed_topology_and_ideal_round_trip():
    _, first, _ = call_json("adic", "report", "--ring", "Z/12", "--ideal", "4")
    lit = json.dumps(first["topology"])
    _, again, _ = call_json("adic", "report", "--ring", "Z/12", "--ideal", ",".join(map(str, first["ideal"])))
    assert again == first
    code, ring_check, _ = call_json("check", "topring", "--ring", "Z/12", "--topology", lit)
    assert code == 0 and ring_check["verdict"] == "pass"
    assert ring_check["topology"] == first["topology"]


def text_verdicts(text):
    return re.findall(r'^\s*verdict: "?([\w-]+)"?$', text, flags=re.M)


def json_verdicts(payload):
    found = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if k == "verdict":
                found.append(v)
            else:
                found += json_verdicts(v)
    elif isinstance(payload, list):
        for v in payload:
            found += json_verdicts(v)
    return found


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "topring", "--ring", "Z/2", "--topology", SIERPINSKI],
        ["adic", "report", "--ring", "Z/12", "--ideal", "6"],
        ["check", "absolute", "--ring", "Z/4", "--topology", '{"n":4,"opens":[[],[0,1,2,3]]}'],
    ],
)
def test_text_and_json_agree(argv):
    code_t, text, _ = call(*argv)
    code_j, data, _ = call_json(*argv)
    assert code_t == code_j
    assert text_verdicts(text) == json_verdicts(data)
    assert text_verdicts(text)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "topring", "ring", "info", "Z/4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "units: [1,3]" in proc.stdout
