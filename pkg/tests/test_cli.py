import json
import shutil
import subprocess

import pytest

from codewheels import topology
from codewheels.cli import main
from codewheels.topology import Undetermined
from tests.oracles import connected_classes

C_STAR = "2345 123 134 145 13 14 23 34 45 3 4"
C2 = "1236 234 135 456 13 23 4 5 6"
C_TL = "123 145 245 246 346 24 45 46 1 2 3"


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestEnumerate:
    def test_text_output(self, capsys):
        code, out = run(capsys, "enumerate", "--n", "4", "--facets", "2")
        assert code == 0
        assert len(out.splitlines()) == connected_classes(4)[2]

    def test_json_output_to_file(self, tmp_path, capsys):
        path = tmp_path / "cx.jsonl"
        assert main(["enumerate", "--n", "6", "--facets", "4", "--json", "--out", str(path)]) == 0
        rows = [json.loads(ln) for ln in path.read_text().splitlines()]
        assert len(rows) == 210 and rows[0]["id"] == 0 and rows[0]["n"] == 6

    def test_pure_filter(self, capsys):
        code, out = run(capsys, "enumerate", "--n", "4", "--facets", "1..10", "--pure-dim", "1")
        assert code == 0 and out


class TestClassify:
    def test_json_round_trip_through_files(self, tmp_path, capsys):
        cx = tmp_path / "cx.jsonl"
        main(["enumerate", "--n", "5", "--facets", "4", "--json", "--out", str(cx)])
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert main(["classify", "--in", str(cx), "--out", str(a), "--no-timings"]) == 0
        assert main(["classify", "--in", str(cx), "--out", str(b), "--no-timings", "--jobs", "2"]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert len(a.read_text().splitlines()) == len(cx.read_text().splitlines())

    def test_text_input(self, tmp_path, capsys):
        cx = tmp_path / "cx.txt"
        cx.write_text("2345 123 134 145\n")
        code, out = run(capsys, "classify", "--in", str(cx))
        assert code == 0 and json.loads(out)["status"] == "Wheel"


class TestAnalyze:
    def test_c_tl(self, capsys):
        code, out = run(capsys, "analyze", "--code", C_TL, "--trunk", "4")
        rep = json.loads(out)
        assert code == 0
        assert sorted(rep["trunks"]["4"]) == [[1, 4, 5], [2, 4], [2, 4, 5], [2, 4, 6], [3, 4, 6], [4, 5], [4, 6]]
        assert rep["wheels"]["wire_wheel"] is not None
        assert rep["obstructions"]["missing_mandatory"] == []
        assert rep["status"] == "Wheel"


class TestCheck:
    def test_valid_sprocket(self, capsys):
        code, out = run(capsys, "check", "sprocket", "--code", C2, "--spokes", "5", "6", "4", "--rim", "3", "--witnesses", "13", "23")
        assert code == 0 and out.strip() == "valid"

    def test_equal_witnesses_rejected(self, capsys):
        code, out = run(capsys, "check", "sprocket", "--code", C2, "--spokes", "5", "6", "4", "--rim", "3", "--witnesses", "13", "13")
        assert code == 1 and out.strip() == "invalid"

    def test_wire_wheel(self, capsys):
        assert run(capsys, "check", "wirewheel", "--code", C_TL, "--spokes", "1", "2", "3", "--rim", "4")[0] == 0

    def test_wheel_frame(self, capsys):
        assert run(capsys, "check", "wheelframe", "--code", C_STAR, "--spokes", "23", "45", "--rim", "1")[0] == 0

    def test_wrong_spoke_count(self):
        with pytest.raises(SystemExit):
            main(["check", "wheelframe", "--code", C_STAR, "--spokes", "2", "3", "4", "--rim", "1"])


class TestReport:
    def test_mismatch_exit_code_and_details(self, tmp_path, capsys):
        cx = tmp_path / "cx.jsonl"
        recs = tmp_path / "r.jsonl"
        details = tmp_path / "d.json"
        main(["enumerate", "--n", "5", "--facets", "4..5", "--json", "--out", str(cx)])
        main(["classify", "--in", str(cx), "--out", str(recs)])
        code, out = run(capsys, "report", "table1", "--in", str(recs), "--details", str(details))
        assert code == 3
        assert "cells differ" in out
        assert json.loads(details.read_text())["mismatched_cells"]

    def test_requires_input(self):
        with pytest.raises(SystemExit):
            main(["report", "table2"])


def test_undetermined_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(topology._CACHE, "_data", {})
    monkeypatch.setattr(topology, "_decide", lambda cx: Undetermined())
    code = main(["analyze", "--code", C_TL])
    assert code == 2
    assert "undetermined" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("codewheels") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["codewheels", "check", "wirewheel", "--code", C_TL, "--spokes", "1", "2", "3", "--rim", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "valid"
