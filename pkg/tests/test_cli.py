import json
import subprocess
import sys

import pytest

from twisted_mkdv import cli
from twisted_mkdv.serialize import loads


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_single_step(capsys):
    code, out, _ = run(capsys, "generate", "-n", "2", "-J", "2", "-c", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["tuple"]["y"] == [["1/1"], ["1/1"], ["1/1", "1/1"]]
    assert doc["outputs"]["eps"] == ["-1/1"]
    assert "timing_seconds" not in doc


def test_generate_text_format(capsys):
    code, out, _ = run(capsys, "generate", "-n", "2", "-J", "2,1", "-c", "0,5", "--format", "text")
    assert code == 0
    assert "degrees: [0, 3, 1]" in out and "status: ok" in out


def test_timing_is_opt_in(capsys):
    code, out, _ = run(capsys, "generate", "-n", "2", "-J", "2", "-c", "1", "--timing")
    assert code == 0 and "timing_seconds" in json.loads(out)


@pytest.mark.parametrize("argv", [
    ["generate", "-n", "2", "-J", "3", "-c", "1"],
    ["generate", "-n", "2", "-J", "2,1", "-c", "1"],
    ["generate", "-n", "2", "-J", "2"],
    ["generate", "-n", "1", "-J", "", "-c", ""],
    ["generate", "-n", "2", "-J", "a", "-c", "1"],
    ["generate", "-n", "2", "-J", "2", "-c", "1/0"],
    ["verify", "-n", "2", "-J", "2", "-c", "7", "-r", "5"],
    ["verify", "-n", "2", "-J", "2", "-c", "7"],
])
def test_usage_errors_exit_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_precondition_violation_exits_two(capsys):
    code, out, err = run(capsys, "generate", "-n", "2", "-J", "2,2", "-c", "0,1")
    assert code == 2 and "not degree increasing" in err


def test_non_generic_cell_exits_two(capsys):
    code, _, err = run(capsys, "verify", "-n", "2", "-J", "0,1", "-c", "0,0", "-r", "1")
    assert code == 2


def test_verify_one_step(capsys):
    code, out, _ = run(capsys, "verify", "-n", "2", "-J", "2", "-c", "7", "-r", "1,3,7")
    assert code == 0
    doc = json.loads(out)
    flows = {f["r"]: f for f in doc["outputs"]["flows"]}
    assert flows[1]["gamma"] == ["-1/1"]
    assert flows[7]["flow_is_zero"] and flows[7]["checks"]["flow_vanishes_beyond_4m"]
    assert all(all(f["checks"].values()) for f in flows.values())


def test_falsified_identity_exits_three(capsys, monkeypatch):
    monkeypatch.setattr(cli, "flow_forms_agree", lambda *a, **k: False)
    code, out, _ = run(capsys, "verify", "-n", "2", "-J", "2", "-c", "7", "-r", "1", "--skip-kdv")
    assert code == 3
    assert json.loads(out)["status"] == "falsified"


def test_export_import_round_trip(capsys, tmp_path):
    for what in ("tuple", "oper", "report"):
        path = tmp_path / f"{what}.json"
        code, _, _ = run(capsys, "export", "-n", "2", "-J", "1,2", "-c", "1/2,3", "--what", what, "--out", str(path))
        assert code == 0
        loads(path.read_text())
        code, out, _ = run(capsys, "import", str(path))
        assert code == 0
        assert json.loads(out)["outputs"]["document"] == json.loads(path.read_text())


def test_import_rejects_tampered_documents(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "export", "-n", "2", "-J", "2", "-c", "1", "--what", "tuple", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["y"][2] = ["1/1", "2/1"]
    path.write_text(json.dumps(doc))
    assert run(capsys, "import", str(path))[0] == 1
    path.write_text("{broken")
    assert run(capsys, "import", str(path))[0] == 1
    assert run(capsys, "import", str(tmp_path / "missing.json"))[0] == 1


def test_seeded_reports_are_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        cli.main(["verify", "-n", "2", "-J", "2,1", "--seed", "11", "-r", "1,3", "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twisted_mkdv", "generate", "-n", "2", "-J", "2", "-c", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and '"status": "ok"' in proc.stdout
