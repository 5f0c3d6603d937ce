import json
import subprocess
import sys

import pytest

from flagorbit.cli import CliConfig, main, parse_document
from flagorbit.params import validate_omega
from test_params import EX_TAU1, EX_TAU2, K_TAU1, K_TAU2


def grid(g):
    return {"rows": len(g), "cols": len(g[0]) if g else 0, "data": [list(r) for r in g]}


EX_OMEGA = json.dumps(validate_omega(EX_TAU1, EX_TAU2).to_json())
TAU_ARC = json.dumps({"rows": 4, "cols": 4, "data": [[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0],
                                                    [0, 0, 0, 1]]})
K_JSON = json.dumps({"tau1": grid(K_TAU1), "tau2": grid(K_TAU2)})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_classify_arc_example(capsys):
    out = run_json(capsys, "classify", TAU_ARC)
    assert out["label"]["I"] == [1, 2, 3, 4]
    assert out["label"]["spi"]["data"] == [[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    assert out["profile"]["signatures"] == [[2, 1, 1], [2, 1, 0], [1, 0, 1], [1, 0, 0]]


def test_classify_identity(capsys):
    ident = json.dumps({"rows": 3, "cols": 3, "data": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    assert run_json(capsys, "classify", ident)["clan"] == "+ + +"


def test_classify_omega_file(capsys, tmp_path):
    path = tmp_path / "omega.json"
    path.write_text(EX_OMEGA)
    assert run_json(capsys, "classify", str(path))["clan"] == "d − c 1 + 1 −"


def test_classify_witness(capsys):
    z = json.dumps({"rows": 2, "cols": 2, "data": [["2", "1/3"], ["1/3", "0"]]})
    out = run_json(capsys, "classify", "--witness", z)
    assert {"b", "w"} <= out["witness"].keys()
    frame = json.dumps({"C": {"rows": 1, "cols": 1, "data": [["1"]]},
                        "D": {"rows": 1, "cols": 1, "data": [["0"]]}})
    out = run_json(capsys, "classify", "--witness", frame)
    assert out["clan"] == "d" and "G" in out["witness"]


def test_classify_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO("c + -"))
    assert run_json(capsys, "classify", "-")["clan"] == "c + −"


def test_classify_text_and_csv(capsys):
    code, out, _ = run(capsys, "classify", "--format", "text", TAU_ARC)
    assert code == 0 and "clan: c 1 1 +" in out.splitlines()
    code, out, _ = run(capsys, "classify", "--format", "csv", TAU_ARC)
    assert out.splitlines()[0] == "n,clan,I,spi,p,q,r,d,fiber_size"


def test_classify_is_deterministic(capsys):
    first = run(capsys, "classify", "--witness", EX_OMEGA)
    second = run(capsys, "classify", "--witness", EX_OMEGA)
    assert first == second


def test_case_b_rejects_gaussian(capsys):
    z = json.dumps({"rows": 1, "cols": 1, "data": [[{"re": "1", "im": "1"}]]})
    code, _, err = run(capsys, "classify", "--case", "B", z)
    assert code == 3 and json.loads(err)["error"] == "ValidationError"


def test_case_does_not_change_answer(capsys):
    a = run_json(capsys, "classify", "--case", "A", EX_OMEGA)
    b = run_json(capsys, "classify", "--case", "B", EX_OMEGA)
    assert a.pop("case") == "A" and b.pop("case") == "B"
    assert a == b


@pytest.mark.parametrize("payload,code", [
    ("{not json", 2),
    ('{"rows": 2, "cols": 2, "data": [["1", "2"], ["3", "4"]]}', 3),
    ('{"C": {"rows": 1, "cols": 1, "data": [["0"]]}, "D": {"rows": 1, "cols": 1, "data": [["0"]]}}', 3),
    (json.dumps({"tau1": grid([[1, 1], [0, 0]]), "tau2": grid([[0, 0], [1, 1]])}), 3),
    ('{"tau1": [[1]], "tau2": [[1]]}', 2),
    ("1 2 +", 2),
    ("1 1 1", 2),
    ('{"gamma": [2, "+"]}', 3),
])
def test_classify_errors(capsys, payload, code):
    got, out, err = run(capsys, "classify", payload)
    assert got == code and out == ""
    assert "error" in json.loads(err)


def test_atlas_1(capsys):
    code, out, _ = run(capsys, "atlas", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "n,clan,I,spi,p,q,r,d,fiber_size",
        "1,+,1,1,1,0,0,1,2",
        "1,−,1,-1,0,1,0,1,2",
        "1,c,1,0,0,0,1,0,1",
        "1,d,,,0,0,0,0,1",
    ]


def test_atlas_json(capsys):
    out = run_json(capsys, "atlas", "2")
    assert out["count"] == 17 == len(out["rows"])


def test_count(capsys):
    out = run_json(capsys, "count", "2")
    assert out == {"report": "count", "n": 2, "formula": 17, "enumerated": 17, "match": True}
    out = run_json(capsys, "count", "12")
    assert out["enumerated"] is None and out["formula"] > 0
    code, out, _ = run(capsys, "count", "3", "--format", "text")
    assert "formula: 76" in out


def test_galois(capsys):
    out = run_json(capsys, "galois", K_JSON)
    assert out["d"] == 1 and out["K"] == {"c": [4], "d": [2], "one": [1], "two": [3, 5]}
    assert len(out["fiber"]) == 2


def test_galois_no_real_points(capsys):
    pair = {"tau1": grid([[0, 1], [0, 0]]), "tau2": grid([[1, 0], [0, 1]])}
    out = run_json(capsys, "galois", json.dumps(pair))
    assert out["rational_points"] is False


def test_galois_strips_signed_input(capsys):
    out = run_json(capsys, "galois", EX_OMEGA)
    assert out["rational_points"] is True


def test_verify_small(capsys):
    out = run_json(capsys, "verify", "1")
    assert out["pass"] and [c["classes"] for c in out["certify"]] == [1, 4]


def test_guards(capsys, monkeypatch):
    assert run(capsys, "atlas", "9")[0] == 4
    assert run(capsys, "verify", "4")[0] == 4
    assert run(capsys, "atlas", "3", "--max-n", "2")[0] == 4
    monkeypatch.setenv("FLAGORBIT_MAX_N", "2")
    assert run(capsys, "atlas", "3")[0] == 4
    assert run(capsys, "atlas", "3", "--max-n", "3")[0] == 0
    monkeypatch.setenv("FLAGORBIT_MAX_N", "x")
    assert run(capsys, "atlas", "1")[0] == 2


def test_cli_config_guard_precedence(monkeypatch):
    monkeypatch.delenv("FLAGORBIT_MAX_N", raising=False)
    assert CliConfig("atlas").guard() == 8
    monkeypatch.setenv("FLAGORBIT_MAX_N", "5")
    assert CliConfig("atlas").guard() == 5
    assert CliConfig("atlas", max_n=2).guard() == 2


def test_out_flag(capsys, tmp_path):
    path = tmp_path / "atlas.csv"
    code, out, _ = run(capsys, "atlas", "1", "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text(encoding="utf-8").startswith("n,clan,")


def _outputs(capsys, tmp_path):
    """Every command and format, as files for convert to read back."""
    cmds = [("classify", TAU_ARC), ("classify", EX_OMEGA), ("atlas", "2"), ("galois", K_JSON),
            ("count", "2"), ("verify", "0")]
    for i, (cmd, arg) in enumerate(cmds):
        for fmt in ("json", "csv", "text"):
            path = tmp_path / f"{i}.{fmt}"
            assert run(capsys, cmd, arg, "--format", fmt, "--out", str(path))[0] == 0
            yield cmd, path
    for i, to in enumerate(("clan", "clan-json", "omega", "label")):
        path = tmp_path / f"conv{i}"
        assert run(capsys, "convert", EX_OMEGA, "--to", to, "--out", str(path))[0] == 0
        yield "convert", path


def test_closed_loop(capsys, tmp_path):
    for cmd, path in list(_outputs(capsys, tmp_path)):
        for to in ("clan", "clan-json", "omega", "label"):
            code, out, err = run(capsys, "convert", str(path), "--to", to)
            assert code == 0, (cmd, path.name, err)


def test_convert_chain(capsys):
    om = run_json(capsys, "convert", "d − c 1 + 1 −", "--to", "omega")
    label = run_json(capsys, "convert", json.dumps(om), "--to", "label")
    clan = run_json(capsys, "convert", json.dumps(label), "--to", "clan")
    assert clan == "d − c 1 + 1 −"
    assert om == json.loads(EX_OMEGA)


def test_parse_document_kinds():
    assert parse_document("+ -")[0] == "clan"
    assert parse_document(EX_OMEGA)[0] == "omega"
    assert parse_document(TAU_ARC)[0] == "matrix"
    assert parse_document(json.dumps({"n": 2, "I": [2], "spi": grid([[1]])}))[0] == "label"
    assert parse_document('{"report": "count", "n": 1}')[0] == "report"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "flagorbit", "count", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["formula"] == 4
