import csv
import io
import json

import pytest

from hypermis import bench
from hypermis.cli import main
from hypermis.generators import random_hypergraph, star
from hypermis.hypergraph import small_example, serialize


def test_run_one_record_fields():
    rec = bench.run_one(small_example(), "kuw-sqrt", "sc", "CONGEST", 0, "small_example")
    assert rec.verdict == "pass" and rec.regime == "congest"
    assert rec.representation == "server-client"
    assert all(1 <= v <= 4 for v in rec.output)
    assert bench.run_one(small_example(), "local-mis", regime="local").verdict == "pass"


def test_errors_become_records():
    rec = bench.run_one(small_example(), "local-mis", regime="congest")
    assert rec.verdict == "error" and "LOCAL" in rec.error
    rec = bench.run_one(small_example(), "kuw-sqrt", regime="warp")
    assert rec.verdict == "error"


def test_regime_defaults():
    assert bench.default_regime("local-mis", "congest") == "local"
    assert bench.default_regime("kuw-sqrt", "LOCAL") == "local"
    with pytest.raises(ValueError):
        bench.algo_family("frobnicate")


def test_records_roundtrip(tmp_path):
    cfg = bench.ExperimentConfig([("f", small_example())], ["kuw-sqrt", "coloring", "matching"], [0, 1])
    recs = bench.run_experiment(cfg)
    assert len(recs) == 6 and bench.all_pass(recs)
    p = tmp_path / "r.json"
    p.write_text(bench.records_json(recs))
    assert bench.load_records(p) == recs
    rows = list(csv.reader(io.StringIO(bench.records_csv(recs))))
    assert tuple(rows[0]) == bench.CSV_COLUMNS and len(rows) == 7


def test_determinism_excluding_wall_time():
    cfg = bench.ExperimentConfig([("r", random_hypergraph(20, 25, seed=1))],
                                 ["kuw-sqrt", "beame-luby", "dim-reduced"], [0, 1])
    a = bench.records_json(bench.run_experiment(cfg), wall_time=False)
    b = bench.records_json(bench.run_experiment(cfg), wall_time=False)
    assert a == b and "wall_time" not in a


def test_keyvalue_parsing():
    kv = bench.parse_keyvalue("# sweep\nfamily = random\nn = [8, 12]\nseeds = 0-2\nalgos = 'kuw-sqrt'\n")
    cfg = bench.sweep_config(kv)
    assert cfg.seeds == [0, 1, 2] and len(cfg.instances) == 2
    with pytest.raises(bench.ConfigError):
        bench.parse_keyvalue("no equals sign")
    with pytest.raises(bench.ConfigError):
        bench.sweep_config({"colour": "red"})


def test_mcds_large_instance_is_skipped():
    rec = bench.run_one(star(45).to_hypergraph(), "mcds")
    assert rec.verdict == "skipped" and rec.output == [1]


# -- CLI ------------------------------------------------------------------------------

def test_cli_gen_run_verify(tmp_path, capsys):
    inst = tmp_path / "h.txt"
    assert main(["gen", "--family", "random", "--n", "10", "--m", "12", "--seed", "3",
                 "-o", str(inst)]) == 0
    out = tmp_path / "r.json"
    csvp = tmp_path / "r.csv"
    assert main(["run", "--algo", "beame-luby", "--input", str(inst), "--trials", "2",
                 "--out", str(out), "--csv", str(csvp)]) == 0
    assert len(json.loads(out.read_text())["records"]) == 2
    assert main(["verify", "--input", str(inst), "--candidate", str(out), "--check", "mis"]) == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("")
    assert main(["verify", "--input", str(inst), "--candidate", str(bad), "--check", "mis"]) == 1
    verdict = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert verdict["pass"] is False and verdict["witness"] is not None


def test_cli_rmds_restrict(tmp_path):
    g = tmp_path / "p.txt"
    g.write_text("3 2\n2 1 2\n2 2 3\n")
    r = tmp_path / "R.txt"
    r.write_text("1 3\n")
    out = tmp_path / "o.json"
    assert main(["run", "--algo", "rmds", "--input", str(g), "--restrict", str(r),
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["records"][0]["output"] == [1, 3]
    assert main(["verify", "--input", str(g), "--candidate", str(out), "--check", "rmds",
                 "--restrict", str(r)]) == 0


def test_cli_sweep(tmp_path):
    cfg = tmp_path / "s.cfg"
    out = tmp_path / "s.json"
    cfg.write_text(f"family = random\nn = 8\nm = 10\nalgos = kuw-sqrt, local-mis\nseeds = 0-1\n"
                   f"out = {out}\n")
    assert main(["sweep", "--config", str(cfg)]) == 0
    recs = json.loads(out.read_text())["records"]
    assert {r["regime"] for r in recs} == {"congest", "local"}


def test_cli_user_errors_exit_2(tmp_path, capsys):
    assert main(["gen", "--family", "bridge-ring", "--n", "5", "--D", "2"]) == 2
    assert main(["run", "--algo", "kuw-sqrt", "--input", str(tmp_path / "missing")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n3 1 2 9\n")
    assert main(["run", "--algo", "kuw-sqrt", "--input", str(bad)]) == 2
    rec = tmp_path / "r.json"
    rec.write_text(json.dumps({"records": [{"output": None}]}))
    inst = tmp_path / "h.txt"
    inst.write_text(serialize(small_example()))
    assert main(["verify", "--input", str(inst), "--candidate", str(rec), "--check", "mis"]) == 2
    assert "error:" in capsys.readouterr().err
