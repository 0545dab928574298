import json
import os
import subprocess
import sys

import pytest

from pathhom.circulant_fourier import StabilityScan, SupportReport
from pathhom.cli import main, parse_range, run, worker_count
from pathhom.constructions import RetractionReport
from pathhom.digraph import TorusCertificate, circulant
from pathhom.pathcomplex import BettiTable


def json_of(argv):
    text, code = run(argv + ["--format", "json"])
    return json.loads(text), code


def test_betti_direct_table_output(capsys):
    assert main(["betti", "circ:n=5;S=1,2", "--max-degree", "4"]) == 0
    out = capsys.readouterr().out
    assert "betti       (1,1,0,0,0)" in out


def test_betti_both_methods_agree():
    d, code = json_of(["betti", "circ:n=7;S=1,3", "--method", "both", "--max-degree", "3"])
    assert code == 0 and d["agree"] is True and d["betti"] == [1, 2, 1, 0]
    d.pop("agree")
    assert BettiTable.from_dict(d).betti == [1, 2, 1, 0]


def test_betti_from_file_and_csv(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text(circulant(9, (3,)).to_text())
    assert main(["betti", str(path), "--max-degree", "2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,S,degree,betti,omega_dim,rank"
    assert [ln.split(",")[3] for ln in lines[1:]] == ["3", "3", "0"]


def test_betti_json_roundtrip():
    d, _ = json_of(["betti", "circ:n=9;S=3", "--method", "fourier", "--max-degree", "2"])
    t = BettiTable.from_dict(d)
    assert t.betti == [3, 3, 0] and t.method == "fourier" and set(t.modes) == {1, 3, 9}
    assert t.to_dict() == d


def test_modes_output():
    d, code = json_of(["modes", "circ:n=9;S=3", "--max-degree", "2"])
    assert code == 0
    assert d["modes"]["3"] == {"phi": 2, "dims": [1, 1, 0]}
    assert d["modes"]["9"]["dims"] == [0, 0, 0]


def test_support_and_stability_roundtrip():
    d, code = json_of(["support", "--s", "1,2,4", "--q-max", "8", "--max-degree", "3"])
    assert code == 0 and d["support"]["conductors"] == [] and d["support"]["partial"]
    assert SupportReport.from_dict(d).to_dict() == d
    d, code = json_of(["stability", "--s", "1,2", "--n", "5..9", "--max-degree", "3",
                       "--q-max", "6"])
    assert code == 0 and d["constant"] and d["consistent"]
    scan = StabilityScan.from_dict(d)
    assert [r.n for r in scan.rows] == [5, 6, 7, 8, 9]
    assert scan.to_dict() == d


def test_homotopy_exit_codes():
    d, code = json_of(["homotopy", "--n", "12", "--d", "3", "--m", "2"])
    assert code == 0 and d["valid"]
    assert RetractionReport.from_dict(d).to_dict() == d
    d, code = json_of(["homotopy", "--n", "12", "--d", "3", "--m", "2", "--method", "local"])
    assert code == 1 and not d["valid"] and d["failures"]


def test_torus_roundtrip():
    d, code = json_of(["torus", "--n", "11", "--gamma", "2,4"])
    assert code == 0 and d["valid"] and d["invariants"] == [1, 1, 11]
    assert TorusCertificate.from_dict(d).to_dict() == d


def test_clique_symmetrized():
    d, code = json_of(["clique", "circ:n=7;S=1,3", "--symmetrize", "--max-degree", "2"])
    assert code == 0 and d["betti"] == [1, 1, 0]


@pytest.mark.parametrize("argv", [
    ["betti", "circ:n=5;S=5"],
    ["betti", "/no/such/file"],
    ["modes", "/no/such/file"],
    ["support", "--s", "2,3"],
    ["stability", "--s", "1,3", "--n", "4..6"],
    ["homotopy", "--n", "6", "--d", "3"],
    ["torus", "--n", "7", "--gamma", "4"],
    ["clique", "circ:n=7;S=1,3"],
    ["betti", "circ:n=5;S=1", "--max-degree", "-1"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["betti"], ["stability", "--s", "x"], ["nope"],
                                  ["stability", "--s", "1,2", "--n", "9..5"]])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_parse_range():
    assert parse_range("3..5") == range(3, 6)
    assert parse_range("4") == range(4, 5)


def test_worker_env_overrides_flag(monkeypatch):
    monkeypatch.setenv("PATHHOM_WORKERS", "3")
    assert worker_count(1) == 3
    monkeypatch.delenv("PATHHOM_WORKERS")
    assert worker_count(2) == 2


def test_parallel_output_is_identical(monkeypatch):
    argv = ["stability", "--s", "1,3", "--n", "7..10", "--max-degree", "3", "--q-max", "5",
            "--format", "json"]
    serial = run(argv)
    monkeypatch.setenv("PATHHOM_WORKERS", "2")
    parallel = run(argv)
    assert parallel == serial


def test_module_entry_point():
    env = dict(os.environ, PATHHOM_WORKERS="1")
    proc = subprocess.run([sys.executable, "-m", "pathhom", "torus", "--n", "7", "--gamma", "3"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert "isomorphism valid" in proc.stdout
