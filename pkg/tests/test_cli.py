import json
import subprocess
import sys

import pytest

from heronet.cli import main
from heronet.report import parse_report

P3 = "0,1,1\n1,2,1\n"
STAR = "0,1,1\n0,2,1\n0,3,1\n"
WEIGHTED = ("0,1,9\n0,2,1\n0,3,1\n1,2,8\n2,3,1\n1,4,2\n3,4,6\n")

BIDS_HEADER = "bid_id,item_code,date,company_id,winner,value\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def bids_csv(tmp_path, months=10):
    rows = [BIDS_HEADER]
    for m in range(1, months + 1):
        rows.append(f"b{m},med,2020-{m:02d}-10,a,0,\n")
        rows.append(f"b{m},med,2020-{m:02d}-10,b,1,\n")
    return write(tmp_path, "bids.csv", "".join(rows))


class TestGen:
    def test_stdout_payload(self, capsysbinary):
        assert main(["gen", "--model", "er", "--n", "12", "--p", "0.3",
                     "--seed", "4"]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["command"] == "gen"
        assert doc["payload"]["model"] == "er"
        assert doc["payload"]["graph"]["n"] == 12
        assert doc["payload"]["corrupt"] == []

    def test_covert_directory_output(self, tmp_path):
        out = tmp_path / "net"
        assert main(["gen", "--model", "covert", "--n", "20", "--seed", "5",
                     "--out", str(out)]) == 0
        for name in ("covert_edges.csv", "covert_nodes.csv", "covert.json"):
            assert (out / name).exists()
        doc = json.loads((out / "covert.json").read_text())
        assert doc["payload"]["corrupt"]

    def test_deterministic_across_runs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        argv = ["gen", "--model", "covert", "--n", "18", "--seed", "7"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        for name in ("covert_edges.csv", "covert_nodes.csv", "covert.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_spec_json_file(self, tmp_path, capsysbinary):
        spec = write(tmp_path, "spec.json",
                     json.dumps({"model": "complete", "n": 5}))
        assert main(["gen", "--spec-json", spec]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["payload"]["graph"]["m"] == 10

    def test_bad_parameter_exits_two(self, capsysbinary):
        assert main(["gen", "--model", "er", "--n", "10", "--p", "2.0"]) == 2


class TestDissim:
    def test_payload_terms(self, tmp_path, capsysbinary):
        a = write(tmp_path, "a.csv", P3)
        b = write(tmp_path, "b.csv", STAR)
        assert main(["dissim", a, b]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert set(doc["payload"]) == {"value", "mu_term", "nnd_term",
                                       "centrality_term"}
        assert 0.0 < doc["payload"]["value"] <= 1.0

    def test_identical_graphs_score_zero(self, tmp_path, capsysbinary):
        a = write(tmp_path, "a.csv", P3)
        assert main(["dissim", a, a]) == 0
        assert parse_report(capsysbinary.readouterr().out)["payload"]["value"] == 0

    def test_csv_format_has_metadata_comments(self, tmp_path, capsysbinary):
        a = write(tmp_path, "a.csv", P3)
        b = write(tmp_path, "b.csv", STAR)
        assert main(["dissim", a, b, "--format", "csv"]) == 0
        text = capsysbinary.readouterr().out.decode()
        assert text.startswith("# schema_version=1\n")
        assert "# command=dissim" in text

    def test_missing_file_exits_two(self, tmp_path, capsysbinary):
        a = write(tmp_path, "a.csv", P3)
        assert main(["dissim", a, str(tmp_path / "nope.csv")]) == 2


class TestDistmat:
    def test_default_csv_matrix(self, tmp_path, capsysbinary):
        a = write(tmp_path, "a.csv", P3)
        b = write(tmp_path, "b.csv", STAR)
        c = write(tmp_path, "c.csv", WEIGHTED)
        assert main(["distmat", a, b, c]) == 0
        text = capsysbinary.readouterr().out.decode()
        data = [l for l in text.splitlines() if not l.startswith("#")]
        assert data[0] == "graph,a,b,c"
        assert len(data) == 4

    def test_requires_two_graphs(self, tmp_path, capsysbinary):
        a = write(tmp_path, "a.csv", P3)
        assert main(["distmat", a]) == 2


class TestHic:
    def test_payload_is_triangle(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", P3)
        active = write(tmp_path, "act.csv", "0,1\n")
        assert main(["hic", g, active]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert set(doc["payload"]) == {"d12", "d13", "d23", "hic"}

    def test_stray_active_edge_exits_two(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", P3)
        active = write(tmp_path, "act.csv", "5,6\n")
        assert main(["hic", g, active]) == 2


class TestBackbone:
    def test_out_file_with_figure_sibling(self, tmp_path):
        g = write(tmp_path, "g.csv", WEIGHTED)
        out = tmp_path / "trace.json"
        assert main(["backbone", "--input", g, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["payload"]["n_steps"] >= 1
        assert doc["payload"]["steps"][0]["alpha"] > 0
        assert (tmp_path / "trace.png").exists()

    def test_directory_output_writes_csv_series(self, tmp_path):
        g = write(tmp_path, "g.csv", WEIGHTED)
        out = tmp_path / "run"
        assert main(["backbone", "--input", g, "--out", str(out)]) == 0
        assert (out / "backbone.json").exists()
        assert (out / "backbone.csv").exists()
        assert (out / "backbone.png").exists()

    def test_single_step_mode(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", WEIGHTED)
        assert main(["backbone", "--input", g, "--single"]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["payload"]["stop_reason"] == "single-step"
        assert doc["payload"]["n_steps"] == 1

    def test_missing_input_exits_two(self):
        assert main(["backbone"]) == 2


class TestBench:
    def test_er_sweep_tiny(self, tmp_path):
        out = tmp_path / "sweep"
        assert main(["bench", "er-sweep", "--n", "8", "--grid", "0.3,0.6",
                     "--seeds", "2", "--out", str(out)]) == 0
        doc = json.loads((out / "bench_er-sweep.json").read_text())
        assert doc["payload"]["argmax_p"] in (0.3, 0.6)
        assert (out / "bench_er-sweep.csv").exists()
        assert (out / "bench_er-sweep.png").exists()

    def test_reruns_byte_identical(self, tmp_path):
        argv = ["bench", "er-sweep", "--n", "8", "--grid", "0.4",
                "--seeds", "2"]
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        for name in ("bench_er-sweep.json", "bench_er-sweep.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_partial_tiny(self, capsysbinary):
        assert main(["bench", "partial", "--n", "16", "--seeds", "2",
                     "--fractions", "0.5,1.0"]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["payload"]["grid"] == [0.5, 1.0]

    def test_covert_tiny(self, capsysbinary):
        assert main(["bench", "covert", "--n", "16", "--seeds", "2",
                     "--max-steps", "3"]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["payload"]["seeds"] == 2
        assert "final_contains_corrupt_fraction" in doc["payload"]


class TestTemporal:
    def test_monthly_series_csv(self, tmp_path, capsysbinary):
        bids = bids_csv(tmp_path)
        assert main(["temporal", "--bids", bids, "--window", "1",
                     "--stride", "1"]) == 0
        text = capsysbinary.readouterr().out.decode()
        data = [l for l in text.splitlines() if not l.startswith("#")]
        assert data[0] == "window,start,end,nodes,edges,hic,z,flagged"
        assert len(data) == 11

    def test_directory_output(self, tmp_path):
        bids = bids_csv(tmp_path)
        out = tmp_path / "series"
        assert main(["temporal", "--bids", bids, "--window", "1",
                     "--stride", "1", "--out", str(out)]) == 0
        assert (out / "temporal.json").exists()
        assert (out / "temporal.csv").exists()
        assert (out / "temporal.png").exists()
        doc = json.loads((out / "temporal.json").read_text())
        assert doc["payload"]["flagged_windows"] == []

    def test_requires_bids(self):
        assert main(["temporal"]) == 2

    def test_bad_date_exits_two(self, tmp_path, capsysbinary):
        bids = bids_csv(tmp_path)
        assert main(["temporal", "--bids", bids, "--start", "junk"]) == 2


class TestNulltest:
    def test_bids_derive_total(self, tmp_path, capsysbinary):
        bids = bids_csv(tmp_path, months=6)
        assert main(["nulltest", "--bids", bids, "--samples", "9"]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["payload"]["total_biddings"] == 6
        assert doc["payload"]["samples"] == 9
        assert doc["payload"]["n_companies"] == 2

    def test_input_requires_total(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", P3)
        assert main(["nulltest", "--input", g]) == 2

    def test_input_with_total(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", P3)
        assert main(["nulltest", "--input", g, "--total-biddings", "20",
                     "--samples", "5"]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert 0.0 < doc["payload"]["p_value"] <= 1.0

    def test_needs_some_source(self):
        assert main(["nulltest"]) == 2


class TestConfigResolution:
    def test_section_and_flat_seed(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", WEIGHTED)
        cfg = write(tmp_path, "cfg.json",
                    json.dumps({"seed": 9, "backbone": {"max_steps": 1}}))
        assert main(["backbone", "--input", g, "--config", cfg]) == 0
        doc = parse_report(capsysbinary.readouterr().out)
        assert doc["seed"] == 9
        assert doc["payload"]["n_steps"] <= 1

    def test_cli_beats_config(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", WEIGHTED)
        cfg = write(tmp_path, "cfg.json", json.dumps({"seed": 9}))
        assert main(["backbone", "--input", g, "--config", cfg,
                     "--seed", "3"]) == 0
        assert parse_report(capsysbinary.readouterr().out)["seed"] == 3

    def test_unknown_section_key_exits_two(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", WEIGHTED)
        cfg = write(tmp_path, "cfg.json",
                    json.dumps({"backbone": {"max_stepz": 1}}))
        assert main(["backbone", "--input", g, "--config", cfg]) == 2

    def test_foreign_flat_key_ignored(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", WEIGHTED)
        cfg = write(tmp_path, "cfg.json", json.dumps({"window": 5}))
        assert main(["backbone", "--input", g, "--config", cfg]) == 0

    def test_malformed_config_exits_two(self, tmp_path, capsysbinary):
        g = write(tmp_path, "g.csv", WEIGHTED)
        cfg = write(tmp_path, "cfg.json", "[1, 2]")
        assert main(["backbone", "--input", g, "--config", cfg]) == 2


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "heronet.cli", "gen", "--model", "er",
         "--n", "6", "--p", "0.5"],
        capture_output=True)
    assert proc.returncode == 0
    assert b'"command": "gen"' in proc.stdout
