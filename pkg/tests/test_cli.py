import io
import json
import subprocess
import sys

import pytest

from alp.cli import main
from alp.fixtures import STORE_DOC
from alp.model import load_model


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "formula, code, text",
    [("K[b,b] ~K[b,a] p_b", 0, "true"), ("K[b,b] K[b,a] p_b", 1, "false")],
)
def test_check_exit_codes(formula, code, text):
    assert run("check", "--model", "store", "--world", "w1", "--formula", formula) == (code, text + "\n")


def test_update_modes():
    f = "[+n][b,b] K[b,b] K[b,a] p_b"
    assert run("check", "--model", "store", "--world", "w1", "--formula", f, "--update-mode", "viewpoint")[0] == 0
    assert run("check", "--model", "store", "--world", "w1", "--formula", f, "--update-mode", "targeted")[0] == 1


def test_explain_lists_blocks():
    code, out = run("check", "--model", "store", "--world", "w1", "--formula", "K[b,b] K[b,a] p_b", "--explain")
    assert code == 1
    assert "{w1, w2, w5, w6}" in out and "{w1, w2, w3, w4}" in out


def test_usage_and_validation_errors(tmp_path, capsys):
    assert run("check", "--model", "store", "--world", "w1", "--formula", "p_a &")[0] == 2
    assert run("check", "--model", "missing", "--world", "w1", "--formula", "p_a")[0] == 2
    assert run("check", "--model", "store", "--world", "w9", "--formula", "p_a")[0] == 2
    assert run("bogus")[0] == 2
    bad = dict(STORE_DOC, indist={})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert run("validate", str(path))[0] == 2
    assert "explicit-indistinguishability" in capsys.readouterr().err


def test_validate_report(tmp_path):
    path = tmp_path / "store.json"
    path.write_text(json.dumps(STORE_DOC))
    code, out = run("validate", str(path))
    assert code == 0
    assert "A^b_b = {p_a, p_b}  indist: {w1, w2} {w3, w4} {w5, w6} {w7, w8}" in out


def test_extension_and_closure():
    assert run("extension", "--model", "store", "--formula", "n") == (0, "w1 w3 w5 w7\n")
    first = run("closure", "--formula", "p", "--agents", "a")
    assert first == run("closure", "--formula", "p", "--agents", "a")
    assert first[1].endswith("count: 14\n")


def test_prove(tmp_path):
    good = tmp_path / "ok.alp"
    good.write_text("1. p -> p ; AX TAUT\n2. L[a] (p -> p) ; LG 1 a\n")
    assert run("prove", str(good)) == (0, "accepted\n")
    bad = tmp_path / "bad.alp"
    bad.write_text("1. p -> q ; AX TAUT\n")
    code, out = run("prove", str(bad))
    assert code == 1 and out.startswith("rejected at line 1")
    broken = tmp_path / "broken.alp"
    broken.write_text("1. p -> ; AX TAUT\n")
    assert run("prove", str(broken))[0] == 2


def test_decide(tmp_path):
    assert run("decide", "--formula", "~K[a,a] p & A[a,a] ~K[a,a] p -> K[a,a] ~K[a,a] p")[0] == 0
    witness = tmp_path / "cex.json"
    code, out = run("decide", "--formula", "~K[a,a] p -> K[a,a] ~K[a,a] p", "--witness", str(witness),
                    "--oracle-bound", "3")
    assert code == 1 and out.startswith("invalid")
    assert "consistent" in out
    load_model(witness)
    assert run("decide", "--formula", "p & ~p", "--satisfiable")[0] == 1
    assert run("decide", "--formula", "K[a,b] K[b,a] (p & q)", "--max-atoms", "10")[0] == 3


def test_scenarios():
    code, out = run("scenario", "store", "--report")
    assert code == 0 and "MISMATCH" not in out
    assert run("scenario", "store-aware")[0] == 0


def test_export_dot():
    code, out = run("export-dot", "--model", "store", "--indist", "b,b")
    assert code == 0 and out.startswith("graph model {")
    assert '"w2" -- "w4" [label="a"];' in out
    assert out == run("export-dot", "--model", "store", "--indist", "b,b")[1]


def test_stdin_batch(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("w1 K[b,b] ~K[b,a] p_b\n\nw1 ~K[b,b] p_a\n"))
    code, out = run("check", "--model", "store", "--stdin")
    assert code == 0 and out.count("\ttrue") == 2


def test_console_entry_point_is_byte_stable():
    cmd = [sys.executable, "-m", "alp", "scenario", "store", "--report"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout
