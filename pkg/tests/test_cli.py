import json
import subprocess
import sys

import pytest

from autoseq.cli import main
from autoseq import opacity as O


def run(capsys, tmp_path, *argv):
    code = main(["--manifest-dir", str(tmp_path / "runs"), *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_tm(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "gen", "--seq", "thue-morse", "--n", "16")
    assert code == 0 and out.strip() == "0110100110010110"


def test_cf(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "cf", "--g", "3", "--depth", "4")
    assert out.strip() == "0 2 5 3 3 1 3 5 2"


def test_opacity_file(capsys, tmp_path):
    f = tmp_path / "tm.json"
    f.write_text(O.thue_morse().dumps())
    code, out, _ = run(capsys, tmp_path, "opacity", str(f), "--formula")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, tmp_path, "opacity", "builtin:worked", "--formula", "--exact")
    assert "1/2" in out


def test_gen_morphism_files(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("# period doubling\na -> ab\nb -> aa\n")
    c = tmp_path / "c.txt"
    c.write_text("a => 0\nb => 1\n")
    code, out, _ = run(capsys, tmp_path, "gen", "--morphism", str(m), "--coding", str(c), "--n", "8")
    assert out.strip() == "01000101"


def test_domain_error_exit(capsys, tmp_path):
    code, _, err = run(capsys, tmp_path, "cf", "--g", "1", "--depth", "3")
    assert code == 1 and "error" in err
    code, _, _ = run(capsys, tmp_path, "opacity", str(tmp_path / "missing.json"), "--formula")
    assert code == 1


def test_usage_exit(capsys, tmp_path):
    assert run(capsys, tmp_path, "gen", "--n", "4")[0] == 2
    assert run(capsys, tmp_path, "bogus")[0] == 2
    assert run(capsys, tmp_path, "ising", "ergodic", "--alpha", "1", "--n", "10")[0] == 2


def test_manifest_and_replay(capsys, tmp_path):
    svg = tmp_path / "d.svg"
    code, _, _ = run(capsys, tmp_path, "fold", "--signs", "(+)", "--depth", "6", "--svg", str(svg))
    assert code == 0 and svg.read_text().startswith("<?xml")
    run(capsys, tmp_path, "ising", "ergodic", "--alpha", "1/2", "--n", "1000", "--seed", "4")
    mans = sorted((tmp_path / "runs").glob("*.json"))
    assert len(mans) == 2
    for m in mans:
        d = json.loads(m.read_text())
        assert {"argv", "parameters", "seed", "versions", "outputs"} <= set(d)
        assert "--manifest-dir" not in d["argv"]
        code, out, _ = run(capsys, tmp_path, "replay", str(m))
        assert code == 0 and out.startswith("replay ok")
    assert json.loads(mans[1].read_text())["seed"] in (None, 4)


def test_replay_detects_tampering(capsys, tmp_path):
    run(capsys, tmp_path, "gen", "--seq", "paperfolding", "--n", "32")
    m, = (tmp_path / "runs").glob("*.json")
    d = json.loads(m.read_text())
    d["outputs"][0]["sha256"] = "0" * 64
    m.write_text(json.dumps(d))
    assert run(capsys, tmp_path, "replay", str(m))[0] == 1


@pytest.mark.parametrize("argv", [
    ["automaton", "synth", "--seq", "thue-morse", "--k", "2", "--witness", "64"],
    ["repeat", "--seq", "fibonacci", "--n", "200", "--max-period", "50"],
    ["complexity", "--seq", "paperfolding", "--nmax", "6", "--prefix", "4096"],
    ["spectral", "fourier", "--seq", "thue-morse", "--n", "1024", "--lambda", "1/3"],
    ["spectral", "wiener", "--seq", "paperfolding", "--n", "1024", "--h", "8"],
    ["ising", "auto", "--alpha", "1"],
    ["ising", "ground", "--alpha", "1", "--eps-seq", "+-+--+"],
    ["pascal", "--d", "4", "--size", "64", "--check"],
])
def test_commands_run(capsys, tmp_path, argv):
    code, out, err = run(capsys, tmp_path, *argv)
    assert code == 0, err
    assert out


def test_module_entry(tmp_path):
    r = subprocess.run([sys.executable, "-m", "autoseq", "--manifest-dir", str(tmp_path),
                        "gen", "--seq", "period-doubling", "--n", "8"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "01000101"
