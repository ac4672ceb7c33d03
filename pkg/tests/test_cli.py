from __future__ import annotations

import json
import subprocess
import sys

import pytest

from corrcolour.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


class TestCount:
    def test_five_cycle_three_colours(self, capsys):
        code, out, _ = run(capsys, "count", "--graph", "c5", "--k", "3")
        assert code == 0
        (row,) = rows(out)
        assert row["count"] == "30" or row["count"] == 30
        assert row["truncated"] is False

    def test_truncation_exit_code(self, capsys):
        code, out, _ = run(capsys, "count", "--graph", "icosahedron", "--k", "5", "--budget", "100")
        assert code == 3 and rows(out)[0]["truncated"] is True

    def test_malformed_graph6(self, capsys):
        code, _, err = run(capsys, "count", "--graph6", "D!!")
        assert code == 2 and err

    def test_no_inputs(self, capsys):
        code, _, _ = run(capsys, "count")
        assert code == 2

    def test_seeded_output_is_reproducible(self, capsys):
        argv = ["count", "--corpus", "planar_le8", "--max-vertices", "5", "--assignment", "random",
                "--samples", "3", "--k", "3", "--seed", "7"]
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        other = run(capsys, *argv[:-1], "8")[1]
        assert first == second and first != other

    def test_workers_do_not_change_output(self, capsys):
        argv = ["count", "--corpus", "planar_le8", "--max-vertices", "4", "--assignment", "random", "--samples", "2"]
        assert run(capsys, *argv)[1] == run(capsys, *argv, "--workers", "2")[1]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "count", "--graph", "k4", "--k", "4", "--format", "csv")
        lines = out.strip().splitlines()
        assert code == 0 and lines[0] == "graph_id,assignment,count,explored_nodes,truncated"
        assert lines[1].split(",")[2] == "24"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "r.json"
        code, out, _ = run(capsys, "count", "--graph", "c5", "--k", "3", "--out", str(target))
        assert code == 0 and out == ""
        assert rows(target.read_text())[0]["graph_id"] == "c5"

    def test_assignment_file(self, capsys, tmp_path):
        f = tmp_path / "a.json"
        f.write_text(json.dumps({"lists": {"0": [0, 1], "1": [0, 1]}, "matchings": {"0,1": [[0, 1]]}}))
        code, out, _ = run(capsys, "count", "--graph6", "A_", "--assignment", str(f))
        assert code == 0 and str(rows(out)[0]["count"]) == "3"

    def test_bad_assignment_file_is_located(self, capsys, tmp_path):
        f = tmp_path / "a.json"
        f.write_text(json.dumps({"lists": {"0": [0, 1], "1": [0, 1]}, "matchings": {"0,1": [[0, 1], [0, 0]]}}))
        code, _, err = run(capsys, "count", "--graph6", "A_", "--assignment", str(f))
        assert code == 2 and "matchings.0,1" in err


class TestVerify:
    def test_unknown_bound(self, capsys):
        code, _, err = run(capsys, "verify", "--bound", "thm9.9", "--graph", "k4")
        assert code == 64 and "unknown bound" in err

    def test_birkhoff_k4(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "birkhoff", "--graph", "k4")
        (row,) = rows(out)
        assert code == 0 and row["holds"] is True and row["count"] == "120"

    def test_injected_count_is_caught(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "birkhoff", "--graph", "k4", "--inject-count", "119")
        assert code == 1 and rows(out)[0]["holds"] is False

    def test_euler_girth_slack_over_corpus(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "prop6.3", "--corpus", "planar_le8",
                           "--max-vertices", "7", "--connected")
        assert code == 0 and rows(out) and all(r["holds"] for r in rows(out))

    def test_csv_fields(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "prop6.3", "--graph", "c5", "--format", "csv")
        assert code == 0 and out.splitlines() == ["graph_id,bound_name,count,holds", "c5,prop6.3,2/1,true"]

    def test_exhaustive_minimum_on_triangle(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "thm1.6", "--graph", "k3", "--exhaustive")
        (row,) = rows(out)
        assert code == 0 and row["holds"] is True

    def test_extension_bound(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "thm3.2", "--graph", "w5", "--s", "0")
        assert code == 0 and len(rows(out)) == 5

    def test_cheeger(self, capsys):
        code, out, _ = run(capsys, "verify", "--bound", "cheeger52", "--graph", "w6")
        assert code == 0 and rows(out)[0]["count"] == 1


class TestOtherCommands:
    def test_extend(self, capsys):
        code, out, _ = run(capsys, "extend", "--graph", "w5", "--s", "0", "--phi", "0:2")
        col = rows(out)[0]["colouring"]
        assert code == 0 and col["0"] == 2 and len(col) == 6

    def test_extend_precondition(self, capsys):
        code, _, err = run(capsys, "extend", "--graph", "w5", "--s", "5", "--phi", "5:0")
        assert code == 2 and err

    def test_extend_needs_embedding(self, capsys):
        code, _, _ = run(capsys, "extend", "--graph6", "Dhc")
        assert code == 2

    def test_search_deletable(self, capsys):
        code, out, _ = run(capsys, "search", "--graph", "w5", "--h", "0,1,2,3", "--r", "5")
        assert code == 0 and rows(out)[0]["witness"] == [4]

    def test_search_critical_triangle(self, capsys, tmp_path):
        f = tmp_path / "tri.json"
        f.write_text(json.dumps({"lists": {"0": [0], "1": [1], "2": [0, 1]},
                                 "matchings": {"0,2": [[0, 0]], "1,2": [[1, 1]]}}))
        code, out, _ = run(capsys, "search", "--kind", "critical", "--graph", "k3", "--assignment", str(f),
                           "--s", "0,1", "--s-edges", "0-1")
        (row,) = rows(out)
        assert code == 0 and row["critical"] is True and len(row["certificate"]) == 3

    def test_deficiency(self, capsys):
        code, out, _ = run(capsys, "deficiency", "--graph", "w5", "--h", "0,1,2,3,4", "--epsilon", "1/50")
        row = rows(out)[0]
        assert code == 0 and row["def_g"] == 2 and row["d"] == {"num": 99, "den": 50}

    def test_girth(self, capsys):
        code, out, _ = run(capsys, "girth", "--graph6", "Dhc")
        assert code == 0 and rows(out)[0]["girth"] == 5

    def test_bad_rational(self):
        with pytest.raises(SystemExit) as exc:
            main(["deficiency", "--graph", "c5", "--epsilon", "x"])
        assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "corrcolour", "count", "--graph", "c5", "--k", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and '"count"' in proc.stdout
