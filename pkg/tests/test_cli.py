import json
import subprocess
import sys

import pytest

from conetop import cli

from conftest import CORPUS


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def inst(name):
    return CORPUS / f"{name}.inst"


def test_profile_nat(capsys):
    code, out, _ = run(capsys, "profile", inst("z-nat"))
    assert code == cli.EXIT_OK
    rep = cli.parse_report(out)
    assert rep["schema"] == cli.SCHEMA
    v = rep["results"][0]["profiles"]["cone"]["verdicts"]["TWO_PSEUDOCOMPACT"]
    assert v["holds"] is False and v["basis"] == "Prop G_S2PCompact"
    assert rep["results"][0]["violations"] == {"cone": [], "cone-star": [], "cross": []}


def test_profile_all_verify(capsys, monkeypatch):
    monkeypatch.delenv("CONETOP_CORPUS", raising=False)
    code, out, _ = run(capsys, "profile", "--all", "--verify", "--jobs", "1")
    assert code == cli.EXIT_OK
    rep = cli.parse_report(out)
    names = [r["instance"]["name"] for r in rep["results"]]
    assert len(names) >= 20
    files = [r["instance"]["source"] for r in rep["results"]]
    assert files == sorted(files)
    for r in rep["results"]:
        assert all(v["passed"] for v in r["verification"])


def test_profile_all_from_env(capsys, monkeypatch, tmp_path):
    (tmp_path / "b.inst").write_text("group.rank = 1\nmonoid.generators = [[2], [-2]]\n")
    (tmp_path / "a.inst").write_text("group.rank = 1\nmonoid.generators = [[1]]\n")
    monkeypatch.setenv("CONETOP_CORPUS", str(tmp_path))
    code, out, _ = run(capsys, "profile", "--all", "--space", "cone")
    assert code == 0
    rep = cli.parse_report(out)
    assert [r["instance"]["name"] for r in rep["results"]] == ["a", "b"]
    assert list(rep["results"][0]["profiles"]) == ["cone"]


def test_profile_parallel_matches_serial(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CONETOP_CORPUS", str(CORPUS))
    paths = [inst(n) for n in ("z-nat", "z-even", "lex2")]
    _, serial, _ = run(capsys, "profile", *paths, "--jobs", "1")
    _, par, _ = run(capsys, "profile", *paths, "--jobs", "2")
    assert serial == par


def test_report_round_trip(capsys):
    code, out, _ = run(capsys, "profile", inst("z2-diag"))
    rep = cli.parse_report(out)
    assert cli.parse_report(cli.emit(rep)) == rep
    with pytest.raises(ValueError):
        cli.parse_report('{"a": 1}')


def test_text_format(capsys):
    code, out, _ = run(capsys, "profile", inst("z-nat"), "--format", "text")
    assert code == 0
    assert "TWO_PSEUDOCOMPACT" in out and "Prop G_S2PCompact" in out
    assert "violations: 0" in out


def test_member(capsys):
    code, out, _ = run(capsys, "member", inst("z2-diag"), "--element", "[3, 2]")
    res = cli.parse_report(out)["results"][0]
    assert code == 0 and res["member"] is True and res["unit"] is False


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", inst("z-nat"), "--set", '[["point", [5]]]')
    res = cli.parse_report(out)["results"][0]
    assert res["closure"] == [["down", [5]]]
    code, out, _ = run(capsys, "closure", inst("z-nat"), "--set", '[["point", [0]]]',
                       "--space", "cone-star", "--window", "4")
    res = cli.parse_report(out)["results"][0]
    assert [0] in res["window_closure"] and [1] not in res["window_closure"]


def test_limits(capsys):
    code, out, _ = run(capsys, "limits", inst("z-nat"), "--affine", "[0]", "[1]")
    assert cli.parse_report(out)["results"][0]["limits"] == "ALL"
    code, out, _ = run(capsys, "limits", inst("z-nat"), "--interleave", "[[[0],[2]],[[-1],[-2]]]")
    assert cli.parse_report(out)["results"][0]["limits"] == "EMPTY"
    code, out, _ = run(capsys, "limits", inst("z-nat"), "--explicit", "[[3],[3],[3],[3]]", "--window", "4")
    lim = cli.parse_report(out)["results"][0]["limits"]
    assert [3] in lim and [4] not in lim
    code, out, _ = run(capsys, "limits", inst("z-nat"), "--affine", "[0]", "[1]",
                       "--space", "cone-star", "--probe", "[[1],[4]]")
    res = cli.parse_report(out)["results"][0]
    assert res["limits"] == "ALL" and res["probe"] == [[1], [4]]


def test_certify_pseudocompact_cone_star(capsys):
    code, out, _ = run(capsys, "certify", inst("z-nat"), "--property", "pseudocompact",
                       "--space", "cone-star", "--verify")
    res = cli.parse_report(out)["results"][0]
    assert code == 0 and res["holds"] is True and res["basis"] == "Prop G_S*PCompact"


def test_certify_and_verify_file(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", inst("z-nat"), "--property", "two-pseudocompact",
                       "--space", "both", "--verify")
    assert code == 0
    rep = cli.parse_report(out)
    assert all(r["verification"][0]["passed"] for r in rep["results"])
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "certify", "--verify-file", path)
    assert code == 0
    assert len(cli.parse_report(out2)["results"]) == 2
    # tamper with the certificate: the chain now runs downwards
    rep["results"][0]["certificate"]["step"] = [-1]
    path.write_text(json.dumps(rep))
    code, out3, _ = run(capsys, "certify", "--verify-file", path)
    assert code == cli.EXIT_VERIFY
    assert not cli.parse_report(out3)["results"][0]["verification"][0]["passed"]


def test_certify_majorization(capsys):
    code, out, _ = run(capsys, "certify", inst("lex2"), "--property", "majorization", "--verify")
    res = cli.parse_report(out)["results"][0]
    assert code == 0 and res["holds"] is False and res["certificate"]["kind"] == "MAJOR_FAIL"


def test_certify_verification_failure_exit_one(capsys, monkeypatch):
    from conetop import witness

    real = witness.verify

    def broken(space, cert, window=None, prefix=16):
        rep = real(space, cert, window, prefix)
        rep.passed, rep.reason = False, "forced"
        return rep

    monkeypatch.setattr(cli.wit, "verify", broken)
    code, _, _ = run(capsys, "certify", inst("z-nat"), "--property", "two-pseudocompact", "--verify")
    assert code == cli.EXIT_VERIFY


def test_window_check(capsys):
    code, out, _ = run(capsys, "window-check", inst("z2-diag"), "--window", "3", "--margin", "3")
    res = cli.parse_report(out)["results"][0]
    assert code == 0
    assert res["membership_mismatches"] == [] and res["unit_mismatches"] == []
    assert res["closure"]["mismatches"] == [] and res["closure"]["safe_points"] > 0


def test_fintop_commands(capsys):
    code, out, _ = run(capsys, "fintop", "verify-lemmas", "--points", "3")
    res = cli.parse_report(out)["results"][0]
    assert code == 0
    assert res["summary"] == "pairs checked: 841, cowide pairs: 192, counterexamples: 0"
    code, out, _ = run(capsys, "fintop", "enumerate", "--points", "2", "--list")
    res = cli.parse_report(out)["results"][0]
    assert res["count"] == 4 and [[], [0], [0, 1]] in res["topologies"]
    code, _, err = run(capsys, "fintop", "enumerate", "--points", "5")
    assert code == cli.EXIT_INPUT and "capped" in err


def test_input_errors_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.inst"
    bad.write_text("group.rank = 1\ngroup.torsion = [1]\n")
    code, _, err = run(capsys, "profile", bad)
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "member", bad, "--element", "[1]")
    assert code == cli.EXIT_INPUT and "torsion entries must be >= 2" in err
    code, _, err = run(capsys, "member", inst("z-nat"), "--element", "[1, 2]")
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "member", inst("z-nat"), "--element", "nope")
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "certify", inst("z-nat"), "--property", "shiny")
    assert code == cli.EXIT_INPUT and "unknown property" in err
    code, _, err = run(capsys, "certify", inst("z-nat"), "--property", "p-space")
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "closure", inst("z-nat"), "--set", '[["blob", [1]]]')
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "limits", inst("z-nat"))
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "limits", inst("z-nat"), "--affine", "[0]", "[1]",
                       "--space", "cone-star", "--probe", "[[-1]]")
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "profile")
    assert code == cli.EXIT_INPUT
    code, _, err = run(capsys, "certify", "--verify-file", tmp_path / "missing.json")
    assert code == cli.EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        cli.main(["profile", str(inst("z-nat")), "--window", "0"])
    assert exc.value.code == 2


def test_internal_breach_exit_three(capsys, monkeypatch):
    monkeypatch.setattr(cli, "check_implications", lambda p: ["COMPACT holds but PSEUDOCOMPACT fails"])
    code, out, err = run(capsys, "profile", inst("z-nat"), "--jobs", "1")
    assert code == cli.EXIT_INTERNAL
    assert "internal invariant breach" in err
    assert cli.parse_report(out)["results"][0]["violations"]["cone"]


def test_lemma_counterexample_exit_three(capsys, monkeypatch):
    monkeypatch.setattr(cli.fintop, "supremum", lambda p: cli.fintop.antidiscrete(p.tau.n))
    code, out, _ = run(capsys, "fintop", "verify-lemmas", "--points", "2")
    assert code == cli.EXIT_INTERNAL


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conetop", "profile", str(inst("z-even")),
                           "--format", "text"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "COMPACT" in proc.stdout
