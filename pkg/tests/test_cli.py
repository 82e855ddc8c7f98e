import json
import subprocess
import sys

import pytest

from fuchsian_quotients.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_distinguish_text_and_json_agree(capsys):
    code, text, _ = run(capsys, "distinguish", "(0;0;2,3,7)", "(0;0;4,3,7)", "--verify")
    assert code == 0
    assert "winner: right" in text and "a = 5, f = 48" in text and "FAIL" not in text
    code, out, _ = run(capsys, "--json", "distinguish", "(0;0;2,3,7)", "(0;0;4,3,7)", "--verify")
    d = json.loads(out)
    assert code == 0
    assert (d["winner"], d["a"], d["f"], d["base_group"]["order"]) == ("right", 5, 48, 168)
    assert d["order"]["factored"] == {"2": 3, "3": 1, "5": 48, "7": 1}
    assert all(v["passed"] for v in d["verification"])


def test_global_flags_after_the_subcommand(capsys):
    code, out, _ = run(capsys, "abelianize", "(0;0;15,42,63)", "--json")
    assert code == 0 and json.loads(out)["torsion"] == [3, 21]


def test_isomorphic_inputs_exit_1(capsys):
    code, _, err = run(capsys, "distinguish", "(0;0;2,3,7)", "(0;0;7,2,3)")
    assert code == 1 and "isomorphic" in err


@pytest.mark.parametrize("argv", [
    ("distinguish", "(0;0;2,3", "(0;0;2,3,7)"),
    ("distinguish", "(0;0;2,3,6)", "(0;0;2,4,4)"),
    ("scrape", "15,42,63", "--s", "4"),
    ("macbeath", "2,3", "7"),
    ("kernel", "(0;0;2,3,7)", "168", "2,3,5"),
    ("epis", "(0;0;2,3,7)", "dihedral:7"),
    ("matrix-check", "0"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error")


def test_capacity_exit_3(capsys):
    code, _, err = run(capsys, "--max-prime-scan", "10", "find-q", "4,3,7")
    assert code == 3 and "capacity" in err


def test_verify_file(tmp_path, capsys):
    code, out, _ = run(capsys, "--json", "distinguish", "(0;0;2,3,3,315)", "(0;0;15,18,21)")
    path = tmp_path / "cert.json"
    path.write_text(out)
    assert run(capsys, "verify", str(path))[0] == 0
    d = json.loads(out)
    d["f"] += 1
    path.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 4 and "FAIL rank f" in out
    path.write_text("{not json")
    assert run(capsys, "verify", str(path))[0] == 2


def test_small_commands(capsys):
    assert "[15, 21, 63]" in run(capsys, "scrape", "15,42,63", "--s", "2")[1]
    assert "[3, 3, 5]" in run(capsys, "closure", "1,2,5", "--parent", "6,6,5")[1]
    assert "s=2" in run(capsys, "find-scrape", "15,42,63", "21,21,90")[1]
    assert "ok=True" in run(capsys, "matrix-check", "60")[1]
    assert run(capsys, "macbeath", "4,3,7", "7")[1].strip() == "admits"
    assert "q = 169" in run(capsys, "find-q", "4,3,7")[1]
    assert "(100;0;" in run(capsys, "kernel", "(0;0;15,42,63)", "660", "5,6,3")[1]
    code, out, _ = run(capsys, "--json", "epis", "(0;0;2,3,3,315)", "a4", "--profile", "2,3,3,3",
                       "--count-only")
    assert code == 0 and json.loads(out)["count"] > 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fuchsian_quotients.cli", "distinguish",
                        "(0;0;2,3,7)", "(0;0;2,3,7)"], capture_output=True, text=True)
    assert r.returncode == 1
