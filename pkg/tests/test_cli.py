import json
import os
import subprocess
import sys

import pytest

from conftest import CONFIGS
from largediv.cli import main


def cfg(name):
    return os.path.join(CONFIGS, name)


def test_faltings_exit_zero(capsys):
    assert main(["check", cfg("faltings.json")]) == 0
    assert "summary: Mordellic (Theorem surf3a(b))" in capsys.readouterr().out


def test_boundary_config_exit_one(capsys):
    assert main(["check", cfg("faltings_r8.json")]) == 1
    assert "none from theorems" in capsys.readouterr().out


def test_triple_equidegree_infeasible(capsys):
    assert main(["equidegree", cfg("p1xp1_triple.json")]) == 1
    out = capsys.readouterr().out
    assert "Infeasible" in out and "w3D3.D'^(q-1) = w1D1.D'^(q-1) + w2D2.D'^(q-1)" in out


def test_malformed_exit_two(capsys):
    assert main(["check", cfg("malformed.json")]) == 2
    assert "/components/0" in capsys.readouterr().err


def test_missing_file_and_sections(capsys, tmp_path):
    assert main(["check", str(tmp_path / "absent.json")]) == 2
    assert main(["oracle", cfg("faltings.json"), "--h0", "3"]) == 2
    assert main(["oracle", cfg("p2_lines.json"), "--h0", "x"]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_oracle_queries(capsys):
    assert main(["oracle", cfg("p2_lines.json"), "--h0", "3"]) == 0
    assert capsys.readouterr().out.strip() == "10"
    assert main(["oracle", cfg("p1_three_points.json"), "--fp-table", "1"]) == 0
    assert "[1, 1, 1, 1] sum=2 Pass" in capsys.readouterr().out


def test_exact_largeness(capsys):
    assert main(["largeness", "--exact", "--max-n", "8", cfg("p1_three_points.json")]) == 0
    assert "very large at n=1" in capsys.readouterr().out


def test_filtration_files(capsys):
    assert main(["filtration", cfg("chain1.json"), cfg("chain2.json")]) == 0
    out = capsys.readouterr().out
    assert "F1 W2:" in out and "F2 W3:" in out and "verified: True" in out


def test_flags_override_document(capsys):
    assert main(["check", cfg("p2_lines.json"), "--format", "json", "--max-n", "1", "--tolerance", "1e-8"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["input"]["seed"] == 0
    assert main(["check", cfg("p2_lines.json"), "--bias", "oops"]) == 2


def test_json_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path, workers in ((a, "1"), (b, "3")):
        env = dict(os.environ, LARGEDIV_WORKERS=workers)
        subprocess.run([sys.executable, "-m", "largediv.cli", "check", cfg("faltings.json"), "--format", "json",
                        "--output", str(path)], check=False, env=env)
    assert a.read_bytes() == b.read_bytes() and len(a.read_bytes()) > 1000
