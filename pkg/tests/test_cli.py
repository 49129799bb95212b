import json
import re

import pytest

from gmedim.cli import main
from gmedim.reference import load_reference, reference_table, reference_version

RECORD_KEYS = [
    "method", "n", "d", "hypothesis", "value", "published",
    "deviation", "status", "runtime_ms",
]


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound_minimal_witness_with_threshold(capsys):
    code, out, _ = _run(capsys, [
        "bound", "--method", "minimal-witness", "--target", "ghz",
        "--n", "4", "--d", "3", "--dgme", "2", "--noise", "depolarizing",
    ])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("method")
    assert any("vcrit-depolarizing" in ln and "0.7955" in ln for ln in lines)


def test_bound_fidelity_cluster_json(capsys):
    code, out, _ = _run(capsys, [
        "bound", "--method", "fidelity", "--target", "cluster",
        "--n", "4", "--d", "4", "--dgme", "3", "--format", "json",
    ])
    assert code == 0
    assert '"value": 0.7500' in out
    rec = json.loads(out)
    assert list(rec) == RECORD_KEYS
    assert rec["status"] == "bound"


def test_bound_tenbasis_value(capsys):
    code, out, _ = _run(capsys, [
        "bound", "--method", "tenbasis", "--d", "3", "--dgme", "2",
        "--format", "json",
    ])
    assert code == 0
    assert '"value": 0.6538' in out


def test_solve_lp_published_row(capsys):
    code, out, _ = _run(capsys, [
        "solve", "--method", "lp", "--target", "ghz",
        "--n", "3", "--d", "3", "--r", "1", "--format", "csv",
    ])
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == ",".join(RECORD_KEYS)
    assert row.startswith("lp,3,3,1,0.2500")
    assert ",optimal," in row


def test_solve_schmidt_row_is_quoted(capsys):
    code, out, _ = _run(capsys, [
        "solve", "--method", "lp", "--n", "3", "--d", "3",
        "--schmidt", "1,1,2", "--format", "csv",
    ])
    assert code == 0
    row = out.strip().splitlines()[1]
    assert '"1,1,2"' in row
    assert "0.4375" in row


BAD_ARGV = [
    ["bound", "--method", "lp", "--d", "3", "--dgme", "1"],
    ["bound", "--method", "tenbasis", "--d", "4", "--dgme", "2"],
    ["solve", "--method", "lp", "--n", "3", "--d", "3"],
    ["solve", "--method", "sdp", "--n", "3", "--d", "2", "--schmidt", "1,1,2"],
    ["solve", "--method", "sdp-stats", "--n", "3", "--d", "3",
     "--r", "2", "--sets", "EX"],
    ["bound", "--method", "fidelity", "--d", "3", "--dgme", "2",
     "--out", "unused.txt"],
]


@pytest.mark.parametrize("argv", BAD_ARGV, ids=lambda a: " ".join(a[:4]))
def test_invalid_configuration_exits_two(capsys, argv):
    code, out, err = _run(capsys, argv)
    assert code == 2
    assert err.startswith("invalid configuration:")
    assert err.count("\n") == 1


def test_json_output_is_deterministic(capsys):
    argv = ["solve", "--method", "lp", "--n", "3", "--d", "3",
            "--r", "1", "--format", "json"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    mask = re.compile(r'"runtime_ms": \d+')
    assert mask.sub("", first) == mask.sub("", second)


def test_out_file_matches_stdout(capsys, tmp_path):
    dest = tmp_path / "row.json"
    code, out, _ = _run(capsys, [
        "bound", "--method", "fidelity", "--d", "3", "--dgme", "2",
        "--format", "json", "--out", str(dest),
    ])
    assert code == 0
    data = dest.read_bytes()
    assert data.decode("utf-8") == out
    assert b"\r" not in data
    assert data.endswith(b"\n")


def test_config_override_is_accepted(capsys, tmp_path):
    cfg = tmp_path / "tuned.cfg"
    cfg.write_text("lp_value_tol = 1e-6  # looser LP duality gap\n")
    code, out, _ = _run(capsys, [
        "solve", "--method", "lp", "--n", "3", "--d", "3", "--r", "1",
        "--config", str(cfg), "--format", "json",
    ])
    assert code == 0
    assert '"value": 0.2500' in out


def test_config_bad_key_exits_two(capsys, tmp_path):
    cfg = tmp_path / "broken.cfg"
    cfg.write_text("no_such_knob = 5\n")
    code, _, err = _run(capsys, [
        "solve", "--method", "lp", "--n", "3", "--d", "3", "--r", "1",
        "--config", str(cfg),
    ])
    assert code == 2
    assert "no_such_knob" in err


def test_selftest_passes(capsys):
    code, out, _ = _run(capsys, ["selftest"])
    assert code == 0
    rows = [ln for ln in out.splitlines()[1:] if ln.strip()]
    assert len(rows) == 9
    assert all("PASS" in row for row in rows)


def test_reproduce_first_table(capsys):
    code, out, _ = _run(capsys, ["reproduce", "table1", "--format", "csv"])
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert all(",match," in row or ",lu-equivalent," in row for row in rows)
    # the dual-valued cell must settle on one candidate and echo it
    dual = [row for row in rows if row.startswith("lp,4,3,1,") and ",match," in row]
    assert any(",0.2703," in row for row in dual)


def test_reference_data_shape():
    ref = load_reference()
    assert reference_version() == 1
    assert len(reference_table("table1")["rows"]) == 5
    assert len(reference_table("table2")["rows"]) == 3
    assert len(reference_table("sm8")["rows"]) == 26
    assert len(reference_table("sm9")["rows"]) == 15
    assert set(ref["tables"]) == {"table1", "table2", "sm8", "sm9"}
    with pytest.raises(ValueError):
        reference_table("table9")
