import json
import subprocess
import sys

import pytest

from incongruence.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sieve_partition(capsys):
    code, out, _ = call(capsys, "sieve", "--family", "p", "--m", "5", "--ell", "5")
    assert code == 0
    data = json.loads(out)
    assert sorted(w["t"] for w in data["prohibited"]) == [0, 1, 2, 3]
    assert data["exceptional"] == [4]


def test_sieve_pinned_seeds(capsys):
    code, out, _ = call(capsys, "sieve", "--family", "cphi:3", "--m", "10", "--ell", "5",
                        "--t0", "0", "--t0", "1")
    assert code == 0
    assert sorted(w["t"] for w in json.loads(out)["prohibited"]) == [0, 1, 3, 4, 5, 6, 8, 9]
    code2, out2, _ = call(capsys, "sieve", "--family", "cphi:3", "--m", "10", "--ell", "5",
                          "--t0", "0,1")
    assert (code2, out2) == (code, out)


def test_verify_cphi5(capsys):
    code, out, _ = call(capsys, "verify", "--family", "cphi:5", "--m", "325", "--t", "15",
                        "--ell", "13", "--depth", "60")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_failure_exit_code(capsys):
    code, out, _ = call(capsys, "verify", "--family", "p", "--m", "5", "--t", "1",
                        "--ell", "5", "--depth", "10")
    assert code == 2
    assert json.loads(out)["first_violation"] == 0


def test_precondition_exit_code(capsys):
    code, _, err = call(capsys, "sieve", "--family", "mock:f", "--m", "5", "--ell", "5",
                        "--t0", "0")
    assert code == 3 and "precondition" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["sieve", "--family", "p", "--m", "5"],
    ["sieve", "--family", "q", "--m", "5", "--ell", "5"],
    ["scan", "--family", "p", "--m", "0", "--ell", "5", "--depth", "3"],
    ["scan", "--family", "p", "--m", "5", "--ell", "6", "--depth", "3"],
    ["verify", "--family", "p", "--m", "5", "--t", "7", "--ell", "5", "--depth", "3"],
    ["expand", "--family", "p", "--depth", "-1"],
    ["expand", "--family", "eta:0^1@N=1", "--depth", "3"],
])
def test_usage_errors(capsys, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 1 and out == ""


def test_expand_formats(capsys):
    code, out, _ = call(capsys, "expand", "--family", "mock:f", "--depth", "4")
    data = json.loads(out)
    assert code == 0 and data["coeffs"] == [1, 1, -2, 3, -3] and data["offset24"] == -1
    code, out, _ = call(capsys, "expand", "--family", "p", "--depth", "9", "--ell", "5",
                        "--format", "tsv")
    rows = out.splitlines()
    assert rows[0] == "n\tcoeff" and rows[10] == "9\t0"


def test_scan_tsv(capsys):
    code, out, _ = call(capsys, "scan", "--family", "p", "--m", "5", "--ell", "5",
                        "--depth", "50", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[5] == "4\tcandidate\t"


def test_certify_omega(capsys):
    code, out, _ = call(capsys, "certify", "--family", "mock:omega", "--m", "40",
                        "--ell", "5", "--depth", "100")
    data = json.loads(out)
    assert code == 0
    assert data["reconciliation"]["status"] == "OK"
    cands = [r["t"] for r in data["scan"]["statuses"] if r["status"] == "candidate"]
    assert cands == [27, 35]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "cert.json"
    code, out, _ = call(capsys, "sieve", "--family", "p", "--m", "7", "--ell", "7",
                        "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["m"] == 7


def test_deterministic_output(tmp_path, capsys):
    argv = ["certify", "--family", "cphi:3", "--m", "10", "--ell", "5", "--depth", "30",
            "--cache", str(tmp_path / "cache")]
    first = call(capsys, *argv)
    files = sorted(p.name for p in (tmp_path / "cache").iterdir())
    second = call(capsys, *argv)
    assert first == second
    assert sorted(p.name for p in (tmp_path / "cache").iterdir()) == files
    third = call(capsys, *argv[:-2])
    assert third == first


def test_cache_is_used(tmp_path, capsys):
    cache = tmp_path / "cache"
    argv = ["expand", "--family", "p", "--depth", "20", "--cache", str(cache)]
    _, out, _ = call(capsys, *argv)
    (path,) = cache.iterdir()
    assert path.name == "partition-std-mexact-d20.qc"
    # doctor the cache: the CLI must read it rather than recompute
    lines = path.read_text().splitlines()
    lines[1] = "42"
    path.write_text("\n".join(lines) + "\n")
    _, out2, _ = call(capsys, *argv)
    assert json.loads(out2)["coeffs"][0] == 42
    # a deeper cached run serves shallower requests
    _, out3, _ = call(capsys, "expand", "--family", "p", "--depth", "5", "--cache", str(cache))
    assert json.loads(out3)["coeffs"] == [42, 1, 2, 3, 5, 7]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "incongruence", "verify", "--family", "p",
                           "--m", "7", "--t", "5", "--ell", "7", "--depth", "100"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True
