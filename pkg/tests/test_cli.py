import csv
import io
import json
import subprocess
import sys

import pytest

from localcharge import cli
from localcharge.bundles import ext_param_count
from localcharge.invariants import CrossCheckError
from localcharge.laurent import parse_laurent
from localcharge.pushforward import StabilizationError


def run(capsys, *argv):
    code = cli.main(["--quiet", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_chi_json_for_the_minimal_bundle(capsys):
    code, out, _ = run(capsys, "--format", "json", "chi", "--k", "3", "--j", "3", "--p", "z*u")
    assert code == 0
    d = json.loads(out)
    assert tuple(d) == cli.JSON_KEYS
    assert (d["width"], d["height"], d["chi"], d["is_instanton"]) == (0, 2, 2, True)
    assert d["split_class"] == 0 and d["stabilized"] and d["height_method"] == "direct"
    assert parse_laurent(d["p"]) == parse_laurent("z*u")


def test_global_flags_after_the_command(capsys):
    code, out, _ = run(capsys, "chi", "--k", "3", "--j", "3", "--p", "z*u", "--format", "json")
    assert code == 0 and json.loads(out)["chi"] == 2


def test_chi_trivial_bundle(capsys):
    code, out, _ = run(capsys, "chi", "--k", "2", "--j", "0")
    assert code == 0
    assert "chi 0" in out


@pytest.mark.parametrize("p,needle", [("z^5*u", "(r=1, s=5)"), ("z**u", "")])
def test_invalid_extension_class_exits_2(capsys, p, needle):
    code, out, err = run(capsys, "chi", "--k", "3", "--j", "3", "--p", p)
    assert code == 2 and out == ""
    assert needle in err


def test_negative_input_exits_2(capsys):
    assert run(capsys, "chi", "--k", "0", "--j", "1")[0] == 2
    assert run(capsys, "extdim", "--k", "2", "--j", "-1")[0] == 2


def test_stabilisation_failure_exits_3(capsys, monkeypatch):
    def boom(*a, **kw):
        raise StabilizationError("did not stabilise", [(3, 4, 5)])
    monkeypatch.setattr(cli, "local_charge", boom)
    code, _, err = run(capsys, "chi", "--k", "2", "--j", "2", "--p", "z*u")
    assert code == 3 and "did not stabilise" in err


def test_cross_check_mismatch_exits_4(capsys, monkeypatch):
    def boom(*a, **kw):
        raise CrossCheckError("height 1 differs")
    monkeypatch.setattr(cli, "local_charge", boom)
    assert run(capsys, "chi", "--k", "2", "--j", "2", "--p", "z*u")[0] == 4


def test_prime_field_runs_the_rational_confirmation(capsys, monkeypatch):
    calls = []
    real = cli.local_charge

    def spy(b, field, **kw):
        calls.append(str(field))
        return real(b, field, **kw)
    monkeypatch.setattr(cli, "local_charge", spy)
    code, out, _ = run(capsys, "--field", "gfp", "--format", "json", "chi", "--k", "2", "--j", "2",
                       "--p", "z*u")
    assert code == 0 and json.loads(out)["chi"] == 1
    assert len(calls) == 2
    calls.clear()
    run(capsys, "--field", "gfp", "--unsafe", "chi", "--k", "2", "--j", "2", "--p", "z*u")
    assert len(calls) == 1


def test_generic_and_explicit_bound(capsys):
    code, out, _ = run(capsys, "--format", "json", "--seed", "3", "chi", "--k", "3", "--j", "4",
                       "--p", "generic")
    d = json.loads(out)
    assert code == 0 and d["chi"] == d["width"] + d["height"]
    assert len(parse_laurent(d["p"]).terms) == ext_param_count(3, 4)
    code, out, _ = run(capsys, "--format", "json", "--rmax", "6", "chi", "--k", "2", "--j", "2",
                       "--p", "z*u")
    assert json.loads(out)["R_used"] == 6


# tables


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "--samples", "3", "--seed", "1",
                       "scan", "--k", "3", "--j", "0..3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,j,p,width,height,chi,instanton,R_used"
    for line in lines[1:]:
        assert line.split(",")[2].startswith('"')
    rows = list(csv.DictReader(io.StringIO(out)))
    chis = [int(r["chi"]) for r in rows]
    assert chis[:3] == [0, 0, 1]
    nontrivial = [int(r["chi"]) for r in rows if r["instanton"] == "true" and int(r["j"]) > 0]
    assert min(nontrivial) == 2
    for r in rows:
        parse_laurent(r["p"])


def test_scan_single_row(capsys):
    code, out, _ = run(capsys, "--format", "json", "--samples", "1", "--seed", "1",
                       "scan", "--k", "2", "--j", "2")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 1 and rows[0]["chi"] == 1


def test_scan_empty_range(capsys):
    code, out, _ = run(capsys, "--format", "csv", "scan", "--k", "2", "--j", "3..2")
    assert code == 0
    assert out.strip() == "k,j,p,width,height,chi,instanton,R_used"


def test_gaps_trivial_k1(capsys):
    code, out, _ = run(capsys, "gaps", "--k", "1", "--jmax", "3")
    assert code == 0 and out.startswith("PASS")


def test_gaps_json_k2(capsys):
    code, out, _ = run(capsys, "--format", "json", "--samples", "3", "gaps", "--k", "2",
                       "--jmax", "3")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "PASS" and d["min_chi"] == 1 and d["violations"] == []


def test_gaps_violation_exits_1(capsys, monkeypatch):
    real = cli.local_charge

    def lowered(b, field, **kw):
        rep = real(b, field, **kw)
        return type(rep)(**{**rep.as_dict(), "height": 0, "chi": rep.width})
    monkeypatch.setattr(cli, "local_charge", lowered)
    code, out, _ = run(capsys, "--samples", "1", "gaps", "--k", "2", "--jmax", "2")
    assert code == 1 and out.startswith("FAIL") and "j=2" in out


# other commands


def test_extdim(capsys):
    code, out, _ = run(capsys, "--format", "json", "extdim", "--k", "2", "--j", "2")
    assert json.loads(out) == {"k": 2, "j": 2, "count": 1, "slots": [[1, 1]]}
    code, out, _ = run(capsys, "extdim", "--k", "3", "--j", "3")
    assert "count 2" in out and "(1,1) (1,2)" in out


def test_elm(capsys):
    code, out, _ = run(capsys, "--format", "json", "elm", "--k", "3", "--j", "3", "--p", "z*u")
    d = json.loads(out)
    assert code == 0 and d["splitting_type"] == 6 and d["split_class"] == 0


def test_ring(capsys):
    code, out, _ = run(capsys, "ring", "--k", "2")
    assert code == 0
    assert "x0*x2 - x1^2" in out
    for line in ("x0 -> u", "x1 -> z*u", "x2 -> z^2*u"):
        assert line in out
    code, out, _ = run(capsys, "--format", "json", "ring", "--k", "4")
    assert len(json.loads(out)["relations"]) == 6


def test_output_is_byte_identical_across_runs(capsys):
    argv = ["--format", "csv", "--samples", "3", "--seed", "5", "scan", "--k", "2", "--j", "2..4"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    # separate processes, so no shared caches
    outs = [subprocess.run([sys.executable, "-m", "localcharge", "--quiet", *argv],
                           capture_output=True, timeout=300).stdout for _ in range(2)]
    assert outs[0] == outs[1] == first[1].encode()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "localcharge", "--quiet", "--format", "json",
                           "chi", "--k", "2", "--j", "2", "--p", "z*u"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["chi"] == 1
    proc = subprocess.run([sys.executable, "-m", "localcharge", "chi", "--k", "3", "--j", "3",
                           "--p", "z^5*u"], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 2 and "(r=1, s=5)" in proc.stderr
