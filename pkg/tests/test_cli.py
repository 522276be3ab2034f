from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from coarsepath.cli import main
from coarsepath.families import cycle_graph, path_graph
from coarsepath.graph import to_graph6
from coarsepath.mccarty import FatMinorWitness, verify_fat_minor


@pytest.fixture
def graph_files(tmp_path: Path) -> dict[str, Path]:
    out = {}
    for name, g in (("c6", cycle_graph(6)), ("c12", cycle_graph(12)), ("p4", path_graph(4))):
        out[name] = tmp_path / f"{name}.g6"
        out[name].write_text(to_graph6(g) + "\n")
    return out


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParams:
    def test_inline_edge(self, capsys):
        code, out, _ = run(capsys, "params", "--inline", "A_")
        assert code == 0 and json.loads(out)["pl"] == 1

    def test_hexagon_file(self, capsys, graph_files):
        code, out, _ = run(capsys, "params", graph_files["c6"])
        assert code == 0 and json.loads(out)["pl"] == 3

    def test_cap_renders_null_with_reason(self, capsys, graph_files):
        code, out, _ = run(capsys, "params", graph_files["c6"], "--pl-max-n", "0")
        rep = json.loads(out)
        assert code == 0 and rep["pl"] is None and "capped" in rep["absent"]["pl"]
        code, out, _ = run(capsys, "params", graph_files["c6"], "--pl-max-n", "0", "--output", "text")
        assert "pl: null (" in out

    def test_edgelist_and_csv(self, capsys):
        code, out, _ = run(capsys, "params", "--inline", "0 1\n1 2\n", "--format", "edgelist", "--output", "csv")
        assert code == 0 and out.splitlines()[1].startswith("inline,Bg,3,")

    def test_multi_graph_file(self, capsys, tmp_path):
        f = tmp_path / "two.g6"
        f.write_text("A_\nBw\n")
        _, out, _ = run(capsys, "params", f)
        assert [json.loads(x)["id"] for x in out.splitlines()] == [f"{f}:0", f"{f}:1"]

    @pytest.mark.parametrize("text", ["A?", "zz", "A"])
    def test_bad_graph_exits_2(self, capsys, text):
        code, _, err = run(capsys, "params", "--inline", text)
        assert code == 2 and err.startswith("error:")

    def test_missing_file_exits_2(self, capsys, tmp_path):
        assert run(capsys, "params", tmp_path / "nope.g6")[0] == 2

    def test_needs_exactly_one_input(self, capsys, graph_files):
        with pytest.raises(SystemExit) as exc:
            main(["params", str(graph_files["c6"]), "--inline", "A_"])
        assert exc.value.code == 2


class TestVerify:
    def test_exhaustive_five(self, capsys, tmp_path):
        code, out, _ = run(capsys, "verify", "--exhaustive", 5, "--out", tmp_path / "run")
        assert code == 0 and "violations: 0" in out and "graphs: 31" in out
        assert json.loads((tmp_path / "run" / "violations.json").read_text())["violations"] == []
        assert len((tmp_path / "run" / "reports.jsonl").read_text().splitlines()) == 31

    def test_random_is_deterministic(self, capsys, tmp_path):
        run(capsys, "verify", "--random", 6, "--n", 10, "--seed", 1, "--out", tmp_path / "a")
        run(capsys, "verify", "--random", 6, "--n", 10, "--seed", 1, "--out", tmp_path / "b")
        for name in ("reports.jsonl", "summary.csv", "violations.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    @pytest.mark.parametrize(
        "argv",
        [
            ["--exhaustive", "9"],
            ["--exhaustive", "0"],
            ["--random", "3", "--n", "5:2"],
            ["--random", "3", "--p", "0"],
            ["--random", "-1"],
        ],
    )
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as exc:
            main(["verify", *argv])
        assert exc.value.code == 2


class TestWitness:
    def test_cycle_fat_minor(self, capsys, graph_files):
        code, out, _ = run(capsys, "witness", graph_files["c12"], "--kind", "fatminor", "--K", 1)
        body = json.loads(out)
        assert code == 0 and body["kind"] == "K3" and body["verified"] is True
        body.pop("verified")
        assert verify_fat_minor(cycle_graph(12), FatMinorWitness.from_json(body))

    def test_path_dominating_pair(self, capsys, graph_files):
        code, out, _ = run(capsys, "witness", graph_files["p4"], "--kind", "dompair")
        assert code == 0
        assert json.loads(out) == {"kind": "pair", "vertices": [0, 3], "k": 0, "verified": True}

    def test_precondition_exit_3(self, capsys, graph_files):
        code, _, err = run(capsys, "witness", graph_files["c6"], "--kind", "fatminor", "--K", 1)
        assert code == 3 and "precondition" in err

    @pytest.mark.parametrize("kind", ["decomposition", "caterpillar", "qi", "ccp", "dompair", "dsp"])
    def test_every_kind_is_verified(self, capsys, graph_files, kind):
        code, out, _ = run(capsys, "witness", graph_files["c6"], "--kind", kind)
        assert code == 0 and json.loads(out)["verified"] is True

    def test_capped_oracles_fall_back(self, capsys, graph_files):
        args = ("--pl-max-n", 0, "--adc-max-n", 0, "--dsp-path-cap", 0)
        assert json.loads(run(capsys, "witness", graph_files["c6"], "--kind", "decomposition", *args)[1])["source"] == "extended_layering"
        assert json.loads(run(capsys, "witness", graph_files["c6"], "--kind", "caterpillar", *args)[1])["source"] == "canonical"
        assert json.loads(run(capsys, "witness", graph_files["c6"], "--kind", "dsp", *args)[1])["verified"]


class TestProcess:
    def test_module_entry_point_is_byte_identical(self, graph_files):
        cmd = [sys.executable, "-m", "coarsepath", "params", str(graph_files["c12"])]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert first == second and json.loads(first)["mci"] == 4

    def test_stdin_input(self, graph_files):
        cmd = [sys.executable, "-m", "coarsepath", "params", "-", "--output", "text"]
        res = subprocess.run(cmd, input="Bw\n", capture_output=True, text=True, check=True)
        assert "pl: 1" in res.stdout
