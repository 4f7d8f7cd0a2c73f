import json

from tanglekit import cli
from tanglekit import brunner as br
from tanglekit import quasialt as qa


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_det(capsys):
    code, out, _ = run(capsys, "det", "--expr", "D([0,3])")
    assert code == 0 and out.strip() == "3"


def test_det_json_has_goeritz(capsys):
    code, out, _ = run(capsys, "--json", "det", "--expr", "D([0,3])")
    data = json.loads(out)
    assert data["det"] == 3 and data["goeritz"] == [[3]]


def test_family_report_det_eight(capsys):
    code, out, _ = run(capsys, "family", "report", "--expr", "tau(-1)", "--p", "1", "--q", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["determinant"] == 8
    assert data["verdicts"]["l_space"]["status"] == "ByQACertificate"


def test_qa_certify_then_check(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "qa", "certify", "--expr", "-1", "--p", "2", "--q", "3", "--out", str(path))
    assert code == 0 and "det 24" in out
    code, out, _ = run(capsys, "qa", "check", str(path))
    assert code == 0 and out.strip() == "Valid"


def test_qa_check_flags_corruption(capsys, tmp_path):
    data = qa.to_json(qa.certify_family("-1", 1, 1))
    data["det"] = [9, 7, 1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "qa", "check", str(path))
    assert code == 1 and "root" in out


def test_montesinos_reduce_accepts_leading_minus(capsys):
    code, out, _ = run(capsys, "--json", "montesinos", "reduce", "--e", "0", "--tails", "-2,2,3/2")
    data = json.loads(out)
    assert code == 0 and data["reduced"] == {"e": -1, "tails": ["2", "2", "3/2"]}


def test_brunner_emit_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "N(tau(-1))", "--out", str(tmp_path / "d.json"))
    assert code == 0 and "determinant: 8" in out
    for fmt in ("text", "json", "gap-like"):
        code, out, _ = run(capsys, "brunner", "emit", "--diagram", str(tmp_path / "d.json"), "--format", fmt)
        assert code == 0
        if fmt == "json":
            assert br.abelianization_order(br.GroupPresentation.from_json(json.loads(out))) == 8


def test_brunner_coarse_and_chain(capsys, tmp_path):
    code, out, _ = run(capsys, "brunner", "coarse", "--expr", "-1", "--p", "2", "--q", "3")
    assert code == 0 and "W1^2 = R1^5" in out
    pres = br.coarse_family_presentation("-1", 2, 3)
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(br.chain_to_json(pres, br.collapse_chain(2, 3))))
    code, out, _ = run(capsys, "brunner", "verify-chain", str(path))
    assert code == 0 and out.startswith("Valid")
    bad = br.chain_to_json(pres, [br.Step(br.Word.parse("W2 W3"), br.Word.parse("W3 W2"), "commute:W2,W3")])
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "brunner", "verify-chain", str(path))
    assert code == 1 and out.startswith("step 0")


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "--json", "corpus", "--max", "3")
    assert json.loads(out)[0] == "-1"
    code, out, _ = run(capsys, "corpus", "--max", "4", "--seed", "5", "--check", "--jobs", "2")
    assert code == 0 and len(out.splitlines()) == 17


def test_domain_errors_exit_one(capsys):
    assert run(capsys, "det", "--expr", "N((")[0] == 1
    assert run(capsys, "family", "report", "--expr", "2", "--p", "1", "--q", "1")[0] == 1
    assert run(capsys, "qa", "check", "/nonexistent.json")[0] == 1


def test_usage_errors_print_help(capsys):
    code, _, err = run(capsys, "bogus")
    assert code == 1 and "usage:" in err
    code, _, err = run(capsys)
    assert code == 1 and "usage:" in err


def test_identity_violation_exits_two(capsys, monkeypatch):
    monkeypatch.setattr(cli.br, "abelianization_order", lambda pres: -1)
    code, _, err = run(capsys, "brunner", "emit", "--expr", "D([0,3])")
    assert code == 2 and "identity violation" in err


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "tanglekit", "det", "--expr", "D([0,5])"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "5"
