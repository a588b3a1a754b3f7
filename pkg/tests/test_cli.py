import json

import pytest

from cylforge.cli import main
from cylforge.corpus import corpus_cases, run_case

CUSP = ["--vars", "x,y,z", "--weights", "3,2,1", "--rel", "x^2-y^3"]
EX27 = ["--vars", "x,y", "--weights", "2,1", "--der", "0,1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_spectrum_237(capsys):
    code, data = run_json(capsys, "spectrum", "--pb", "2", "3", "7", "--max-num", "100", "--max-den", "10")
    assert code == 0 and data["primitive_count"] == 3


def test_lnd_check_cusp(capsys):
    code, data = run_json(capsys, "lnd-check", *CUSP, "--der", "0,0,1")
    assert code == 0 and data["reason"] == "negative_degree_automatic"


def test_lnd_check_not_nilpotent(capsys):
    code, data = run_json(capsys, "lnd-check", "--vars", "x", "--weights", "1", "--der", "x")
    assert code == 1 and data["status"] == "not_nilpotent"


def test_liendo_negative_exit(capsys):
    code, data = run_json(capsys, "dpd", "liendo", "--pb", "2", "3", "7")
    assert code == 1 and data["cylindrical"] is False


def test_resource_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("CYLFORGE_MAX_STEPS", "1")
    code, data = run_json(capsys, "validate", "--vars", "x,y,z,w", "--weights", "1,1,1,1",
                          "--rel", "x*w-y*z", "--rel", "y^2-x*z", "--rel", "z^2-y*w")
    assert code == 4 and data["error"] == "ResourceCapError"


def test_parse_error_exit(capsys):
    code, data = run_json(capsys, "validate", "--vars", "x,y", "--weights", "1,1", "--rel", "x^2 +")
    assert code == 3 and "position" in data["message"]


def test_inhomogeneous_relation_is_invalid(capsys):
    code, data = run_json(capsys, "validate", "--vars", "x,y", "--weights", "2,1", "--rel", "x-y")
    assert code == 1 and data["degrees"] == [2, 1]


def test_bad_derivation_exit(capsys):
    code, data = run_json(capsys, "slice", *CUSP, "--der", "1,0,0")
    assert code == 3 and data["error"] == "DerivationError"


def test_missing_ring_exit(capsys):
    code, _ = run(capsys, "validate")
    assert code == 3


def test_unknown_problem_key(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"ring": {"variables": ["x"], "weights": [1]}, "extra": 1}))
    code, data = run_json(capsys, "validate", "--problem", str(p))
    assert code == 3 and "extra" in data["message"]


def test_problem_file_with_params(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"ring": {"variables": ["x", "y"], "weights": [2, 1]},
                             "derivation": {"x": "0", "y": "1"}, "params": {"bound": 20}}))
    code, data = run_json(capsys, "kernel", "--problem", str(p))
    assert code == 0 and data["saturation_index"]["e"] == 2


def test_problem_file_json_error_position(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text('{"ring": ')
    code, data = run_json(capsys, "validate", "--problem", str(p))
    assert code == 3 and "line 1" in data["message"]


@pytest.mark.parametrize("argv", [
    ["slice", *CUSP, "--der", "0,0,1"],
    ["slice", *EX27, "--positive"],
    ["polar-cylinder", *EX27],
    ["polar-cylinder", *CUSP, "--der", "0,0,1", "--h", "y", "--allow-reducible-fiber"],
    ["cyclic-quotient", *EX27, "--h", "x"],
    ["veronese", "--vars", "x,y", "--weights", "1,1", "--d", "2"],
    ["spectrum", "--pb", "2", "3", "7", "--max-num", "30", "--max-den", "4"],
    ["dpd", "cylinder", "--pb", "2", "3", "7", "--point", "0", "--p", "21", "--q", "1"],
])
def test_certificate_roundtrip(argv, tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, _ = run(capsys, *argv, "--certificate", str(path))
    assert code == 0
    code, data = run_json(capsys, "verify", str(path))
    assert code == 0 and data["ok"]


def test_tampered_certificate_fails(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "slice", *CUSP, "--der", "0,0,1", "--certificate", str(path))
    data = json.loads(path.read_text())
    data["h"] = "2"
    path.write_text(json.dumps(data))
    code, out = run_json(capsys, "verify", str(path))
    assert code == 1 and not out["checks"]["dg_equals_h"]


def test_verify_unknown_kind(tmp_path, capsys):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps({"kind": "mystery"}))
    code, _ = run(capsys, "verify", str(path))
    assert code == 3


def test_determinism(capsys):
    outs = [run(capsys, "polar-cylinder", *EX27)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_text_output(capsys):
    code, out = run(capsys, "dpd", "pb", "--pb", "2", "3", "7", "--output", "text")
    assert code == 0 and "alpha: 1" in out and "gamma: -8" in out


def test_corpus_list_and_run(capsys):
    code, data = run_json(capsys, "corpus", "list")
    ids = {c["id"] for c in data}
    assert {"ex-2.3", "ex-2.7", "ex-3.5.1", "ex-3.5.2", "ex-3.8"} <= ids
    code, data = run_json(capsys, "corpus", "run", "ex-2.7")
    assert code == 0 and data["passed"]


@pytest.mark.parametrize("case", corpus_cases(), ids=lambda c: c.id)
def test_corpus_case(case):
    failures = [o.to_json() for o in run_case(case) if not o.passed]
    assert not failures


def test_corpus_mismatch_reports_diff(monkeypatch, capsys):
    import cylforge.cli as cli
    real = cli.corpus_cases

    def broken():
        cases = real()
        cases[0].checks = [dict(cases[0].checks[0], expect={"no_such_key": 1})]
        return cases

    monkeypatch.setattr(cli, "corpus_cases", broken)
    code, data = run_json(capsys, "corpus", "run", "all")
    assert code == 1 and data["cases"][-1]["failures"][0]["diff"]["no_such_key"]["expected"] == 1
