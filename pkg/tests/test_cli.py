import json
import re
import subprocess
import sys

import pytest

from supermax.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(["list"], capsys)
    assert code == 0
    assert "T3R10 | hei(2n) ⋉ o(2n) in sl(Λ(n)) | n ≥ 2, n ≠ 3" in out
    assert len(re.findall(r"^T[123]R\d+ \|", out, re.M)) == 26
    assert "## Exceptional cases" in out
    exc = out.index("## Exceptional cases")
    assert all(out.index(line) > exc for line in out.splitlines() if line.startswith("EXC-"))


def test_list_json(capsys):
    code, out, _ = run(["list", "--format", "json"], capsys)
    assert code == 0 and any(r["id"] == "T1R1" for r in json.loads(out))


def test_verify_t1r1(capsys):
    code, out, _ = run(["verify", "--row", "T1R1"], capsys)
    assert code == 0 and json.loads(out)["status"] == "CertifiedMaximal"


def test_verify_as_witness(capsys):
    code, out, _ = run(["verify", "--row", "THM3.1-n3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "NotMaximal" and rep["witness_name"]


def test_verify_admissibility_exit(capsys):
    code, _, err = run(["verify", "--row", "T3R10", "--params", "n=3"], capsys)
    assert code == 2 and "AdmissibilityError" in err


def test_verify_unknown_row(capsys):
    code, _, err = run(["verify", "--row", "NOPE"], capsys)
    assert code == 2


def test_verify_mismatch_exit(capsys):
    code, _, err = run(["verify", "--row", "T3R6"], capsys)
    assert code == 1 and "expected Maximal" in err


def test_verify_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--row", "T1R4", "--seed", "7", "--out", str(a)]) == 0
    assert main(["--out", str(b), "verify", "--row", "T1R4", "--seed", "7"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_jobs_ordered(capsys):
    code, out, _ = run(["verify", "--row", "T1R4;T1R3;DYN1", "--jobs", "2", "--format", "md"], capsys)
    assert code == 0
    rows = [l.split("|")[1].strip() for l in out.splitlines()[2:] if l.startswith("|")]
    assert rows == sorted(rows)


def test_verify_evidence_mode(capsys):
    code, out, _ = run(["verify", "--row", "T1R4", "--mode", "evidence", "--trials", "3"], capsys)
    assert code == 0 and json.loads(out)["status"] == "EvidenceMaximal"


def test_suite_signs(capsys):
    code, out, _ = run(["suite", "--name", "signs"], capsys)
    assert code == 0 and "pass" in out


def test_suite_unknown(capsys):
    code, _, _ = run(["suite", "--name", "nope"], capsys)
    assert code == 2


def test_dump(capsys):
    code, out, _ = run(["dump", "--algebra", "pe(2)"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["sdim"] == [4, 4]
    code, _, _ = run(["dump", "--algebra", "bogus"], capsys)
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "supermax", "verify", "--row", "T3R10", "--params", "n=3"],
                       capture_output=True, text=True)
    assert r.returncode == 2
