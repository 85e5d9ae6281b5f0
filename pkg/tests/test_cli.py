import json
import os
from pathlib import Path

import pytest

from virtgraph import vgd
from virtgraph.cli import main
from virtgraph.graphs import load_edges

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"
REGEN = os.environ.get("VIRTGRAPH_REGEN_GOLDEN") == "1"

CASES = [
    ("bracket", ["bracket", f"{FIX}/u_plus.vgd"]),
    ("jones", ["jones", f"{FIX}/trefoil.vgd"]),
    ("lk", ["lk", f"{FIX}/h_plus.vgd", "--components", "0,1"]),
    ("decompose", ["decompose", f"{FIX}/trefoil.vgd", "--crossing", "0"]),
    ("skein", ["skein", f"{FIX}/figure_eight.vgd", "--crossing", "2"]),
    ("vu", ["vu", f"{FIX}/twist2.vgd", "--budget", "2"]),
    ("simplify", ["simplify", f"{FIX}/u_plus.vgd"]),
    ("gen_graph", ["gen", "--graph", "petersen"]),
    ("gen_convex", ["gen", "convex", "--graph", "k6"]),
    ("gen_twist", ["gen", "twist", "--n", "1"]),
    ("family", ["family", "--seed", "k6"]),
    ("cg", ["cg", "--graph", "k6"]),
    ("cg_sweep", ["cg", "--graph", "k6", "--sweep"]),
    ("ivl", ["ivl", f"{FIX}/k6_three_crossings.vgd", "--graph-file", f"{FIX}/k6.edges", "--n", "3", "--sweep-signs"]),
    ("ivk", ["ivk", f"{FIX}/c14_three_crossings.vgd", "--graph-file", f"{FIX}/c14.edges", "--n", "2"]),
    ("knot_sum", ["--workers", "1", "knot-sum", "--graph", "k7"]),
]


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, capsys):
    assert main(argv) == 0
    out = capsys.readouterr().out
    path = GOLDEN / f"{name}.out"
    if REGEN:
        path.parent.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()


def test_pinned_outputs(capsys):
    main(["jones", f"{FIX}/trefoil.vgd"])
    assert json.loads(capsys.readouterr().out) == {"jones": "-t^4 + t^3 + t"}
    main(["cg", "--graph", "k6", "--sweep"])
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "pass" and report["assignments"] == 32768


def test_worker_count_does_not_change_bytes(capsys):
    argv = ["ivl", f"{FIX}/k6_three_crossings.vgd", "--graph-file", f"{FIX}/k6.edges", "--n", "3", "--sweep-signs"]
    main(["--workers", "1", *argv])
    one = capsys.readouterr().out
    main(["--workers", "3", *argv])
    assert capsys.readouterr().out == one


def test_exit_codes(capsys, monkeypatch):
    assert main(["jones", f"{FIX}/huge30.vgd"]) == 2
    assert "cap of 26" in capsys.readouterr().err
    assert main(["--state-cap", "30", "decompose", f"{FIX}/trefoil.vgd", "--crossing", "0"]) == 0
    capsys.readouterr()
    monkeypatch.setenv("VIRTGRAPH_STATE_SUM_CAP", "2")
    assert main(["jones", f"{FIX}/trefoil.vgd"]) == 2
    monkeypatch.delenv("VIRTGRAPH_STATE_SUM_CAP")
    assert main(["jones", f"{FIX}/bad_slot.vgd"]) == 3
    assert "line 6" in capsys.readouterr().err
    assert main(["jones", f"{FIX}/missing.vgd"]) == 3
    assert main(["frobnicate"]) == 1
    assert main(["lk", f"{FIX}/hopf.vgd", "--components", "0,7"]) == 1
    assert main(["lk", f"{FIX}/hopf.vgd", "--components", "zero"]) == 1
    assert main(["gen", "twist"]) == 1
    assert main(["--sweep-cap", "10", "cg", "--graph", "k6", "--sweep"]) == 2


def test_failing_verdict_is_still_exit_zero(capsys):
    assert main(["cg", "--graph", "k6", "--sweep", "--expected", "0"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "fail" and report["counterexample_count"] == 32768


def test_files_written(tmp_path, capsys):
    assert main(["family", "--seed", "k6", "--out", str(tmp_path / "fam")]) == 0
    manifest = json.loads((tmp_path / "fam" / "manifest.json").read_text())
    assert manifest["classes"] == len(list((tmp_path / "fam").glob("*.edges")))
    first = load_edges(tmp_path / "fam" / manifest["members"][0]["file"])
    assert (first.n, first.m) == (6, 15)
    assert main(["gen", "convex", "--graph", "k6", "--signs", "all-negative", "--out", str(tmp_path / "k6.vgd")]) == 0
    assert len(vgd.load(tmp_path / "k6.vgd").classical_crossings()) == 15
    assert main(["simplify", f"{FIX}/u_plus.vgd", "--out", str(tmp_path / "s.vgd")]) == 0
    assert vgd.load(tmp_path / "s.vgd").nodes == {}


def test_text_format(capsys):
    assert main(["--format", "text", "jones", f"{FIX}/trefoil.vgd"]) == 0
    assert capsys.readouterr().out == "jones: -t^4 + t^3 + t\n"
