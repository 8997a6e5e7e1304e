import csv
import json

import pytest

from lcl_padding import cli, codec


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_gen_gadget_writes_ten_nodes(work):
    assert cli.main(["gen-gadget", "--delta", "3", "--height", "2", "--out", "g.json"]) == 0
    g, layers, meta = codec.decode((work / "g.json").read_bytes())
    assert g.n == 10 and "input" in layers
    assert meta["config"]["delta"] == 3 and meta["config"]["seed"] == 0


def test_no_cheat_prints_none(work, capsys):
    cli.main(["gen-gadget", "--delta", "3", "--height", "2", "--out", "g.json"])
    capsys.readouterr()
    assert cli.main(["no-cheat", "g.json"]) == 0
    assert capsys.readouterr().out.strip() == "none"


def test_check_and_prove_on_valid_gadget(work):
    cli.main(["gen-gadget", "--delta", "2", "--heights", "2,3", "--out", "g.json"])
    assert cli.main(["check-gadget", "g.json", "--out", "v.jsonl"]) == 0
    assert (work / "v.jsonl").read_text() == ""
    assert cli.main(["prove-error", "g.json", "--out", "p.json"]) == 0
    _, layers, meta = codec.decode((work / "p.json").read_bytes())
    assert meta["errors"] == 0 and meta["psi_g_accept"]


def test_verify_corrupted_solution_exits_one(work):
    cli.main(["pad", "--base", "triangle", "--delta", "2", "--height", "1", "--out", "t.json"])
    assert cli.main(["solve", "t.json", "--out", "s.json"]) == 0
    g, layers, meta = codec.decode((work / "s.json").read_bytes())
    out = layers["output"]
    v = g.nodes()[0]
    x = out.nodes[v]
    out.nodes[v] = x._replace(lst=x.lst._replace(ob=tuple("in" for _ in x.lst.ob)))
    (work / "bad.json").write_bytes(codec.encode(g, layers, meta))
    assert cli.main(["verify", "bad.json", "--problem", "pi-prime@1", "--out", "r.jsonl"]) == 1
    records = [json.loads(line) for line in (work / "r.jsonl").read_text().splitlines()]
    assert records and {"kind", "location", "constraint"} <= set(records[0])


def test_two_level_pipeline(work):
    cli.main(["pad", "--base", "triangle", "--delta", "2", "--height", "2", "--out", "l1.json"])
    cli.main(["pad", "--base", "l1.json", "--delta", "3", "--height", "1", "--out", "l2.json"])
    _, _, meta = codec.decode((work / "l2.json").read_bytes())
    assert meta["problem"] == "pi-prime@2" and meta["deltas"] == [2, 3]
    assert cli.main(["solve", "l2.json", "--out", "s2.json"]) == 0
    assert cli.main(["verify", "s2.json", "--out", "v.jsonl"]) == 0
    assert cli.main(["extract", "s2.json", "--out", "x1.json"]) == 0
    assert cli.main(["verify", "x1.json", "--out", "v1.jsonl"]) == 0
    assert cli.main(["extract", "x1.json", "--out", "x0.json"]) == 0
    g, _, meta = codec.decode((work / "x0.json").read_bytes())
    assert g.n == 3 and meta["problem"] == "sinkless-orientation"


def test_measure_locality_csv(work):
    assert cli.main(["measure-locality", "--heights", "1-2", "--out", "m.csv"]) == 0
    rows = list(csv.DictReader((work / "m.csv").open()))
    assert list(rows[0]) == ["n", "h", "Δ", "T_min", "accept", "seed"]
    assert [int(r["T_min"]) for r in rows] == [9, 16]


def test_hard_instance_and_recurse(work):
    assert cli.main(["hard-instance", "--n", "100", "--out", "h.json"]) == 0
    g, _, meta = codec.decode((work / "h.json").read_bytes())
    assert g.n == 100 and meta["gadget_size"] == 10 and meta["isolated"] == 0
    assert cli.main(["recurse", "--k", "2", "--deltas", "2", "--budget", "10", "--out", "r.json"]) == 2


def test_fuzz_and_report(work):
    assert cli.main(["fuzz", "--n", "40", "--out", "f.jsonl"]) == 0
    assert cli.main(["report", "f.jsonl", "--out", "rep.json"]) == 0
    rep = json.loads((work / "rep.json").read_text())
    assert rep["artifacts"][0]["records"] == 40


def test_errors_are_machine_readable(work, capsys):
    assert cli.main(["verify", "missing.json"]) == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "io"
    assert cli.main(["pad", "--base", "pairs:1-2,1-2,1-1", "--delta", "2"]) == 2
    assert json.loads(capsys.readouterr().err.strip().splitlines()[-1])["error"] == "GraphError"


def test_seed_env_is_echoed(work, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "17")
    cli.main(["gen-gadget", "--delta", "1", "--out", "g.json"])
    _, _, meta = codec.decode((work / "g.json").read_bytes())
    assert meta["config"]["seed"] == 17


def test_parse_helpers():
    assert cli.parse_ints("1-3,7") == [1, 2, 3, 7]
    assert cli.parse_base("pairs:1-2,2-3,3-1").n == 3
    with pytest.raises(cli.CliError):
        cli.parse_inner("magic")
