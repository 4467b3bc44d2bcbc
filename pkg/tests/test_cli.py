import json
import subprocess
import sys

import pytest

from finring import __version__
from finring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "M(2,Z2)")
    assert code == 0
    assert "M(2,Z2): order 16, characteristic 2" in out
    assert "is_usqrtdelta            yes" in out


def test_analyze_json_schema(capsys):
    code, out, _ = run(capsys, "analyze", "Z4", "--json", "--sets")
    assert code == 0
    d = json.loads(out)
    assert d["version"] == __version__
    assert d["ring"] == {"label": "Z4", "order": 4, "characteristic": 4}
    assert d["profile"]["is_usqrtdelta"] is True
    assert d["profile"]["counts"]["units"] == 2
    assert d["sets"]["units"] == [1, 3]
    assert d["sets"]["sqrt_delta"] == [0, 2]


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "Prod(Z4,Z4)")
    assert code == 0
    assert "witness: index 14 = (2,3)" in out
    code, out, _ = run(capsys, "witness", "M(2,Z2)")
    assert code == 0 and "is U√Δ" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "M(2,")
    assert code == 2
    assert "position 4" in err


def test_size_cap_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "M(3,Z4)")
    assert code == 3 and "262144" in err
    code, _, _ = run(capsys, "--max-order", "300000", "analyze", "Z4")
    assert code == 0
    code, _, _ = run(capsys, "--max-order", "8", "analyze", "Triv(Z3)")
    assert code == 3
    code, _, _ = run(capsys, "enumerate", "--order", "6")
    assert code == 3


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as ei:
        main([])
    assert ei.value.code == 2
    code, _, err = run(capsys, "verify", "--claims", "C77")
    assert code == 2 and "unknown claim" in err
    code, _, _ = run(capsys, "verify", "--corpus", "/nonexistent/corpus.txt")
    assert code == 2


def test_verify_subset(capsys, tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("Z4\nProd(Z4,Z4)\n")
    code, out, _ = run(capsys, "verify", "--claims", "C26,C06", "--corpus", str(corpus), "--json")
    assert code == 0
    d = json.loads(out)
    assert d["corpus"] == str(corpus)
    assert [(c["id"], c["ring"], c["status"]) for c in d["claims"]] == [
        ("C06", "Z4", "pass"), ("C06", "Prod(Z4,Z4)", "pass"), ("C26", "Prod(Z4,Z4)", "pass")
    ]
    assert "elapsed_ms" not in d["claims"][0]
    code, out, _ = run(capsys, "verify", "--claims", "C26", "--corpus", str(corpus), "--json", "--timings")
    assert "elapsed_ms" in json.loads(out)["claims"][0]


def test_verify_reports_failures(capsys, tmp_path, monkeypatch):
    from finring import verify as V
    from finring.core import ElemSet

    monkeypatch.setattr(V, "sqrt_delta", lambda R: ElemSet.full(R))
    corpus = tmp_path / "c.txt"
    corpus.write_text("Z4\n")
    code, out, _ = run(capsys, "verify", "--claims", "C19", "--corpus", str(corpus))
    assert code == 1
    assert "failure C19 on Z4" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--order", "4")
    assert code == 0 and out.startswith("4 unital rings of order 4 up to isomorphism, 3 U√Δ")
    code, out, _ = run(capsys, "enumerate", "--order", "4", "--json")
    d = json.loads(out)
    assert d["count"] == 4 and d["usqrtdelta_count"] == 3
    assert [c["label"] for c in d["classes"]] == ["Z4", "Triv(Z2)", "F4", "Prod(Z2,Z2)"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "finring", "analyze", "Z3", "--json"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["profile"]["is_field"] is True
