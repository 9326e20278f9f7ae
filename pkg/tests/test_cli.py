import json
import subprocess
import sys

import pytest

from wpgraph.cli import main


def run(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "wpgraph", *args], input=stdin,
                          capture_output=True, text=True, timeout=300)


def test_analyze_c5_json():
    res = run("analyze", "C5", "--json")
    assert res.returncode == 0
    d = json.loads(res.stdout)
    assert d["n"] == 5 and d["alpha"] == 2
    assert d["quasireg"]["2"] == {"holds": False, "witness": [1, 3]}


def test_analyze_text(capsys):
    assert main(["analyze", "Dhc"]) == 0
    out = capsys.readouterr().out
    assert "witness [1, 3] |A|=2 |N(A)|=3" in out


def test_analyze_figure(tmp_path):
    assert main(["analyze", "C5", "--figures", str(tmp_path)]) == 0
    assert (tmp_path / "polynomial.png").stat().st_size > 0


def test_poly(capsys):
    assert main(["poly", "C5"]) == 0
    assert capsys.readouterr().out.strip() == "[1, 5, 5]"


def test_construct(capsys):
    assert main(["construct", "--corona", "K2*K1"]) == 0
    assert main(["construct", "--union", "K2+K2"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines == ["Cq", "C`"]
    assert main(["construct", "--corona", "K2+K1"]) == 2


def test_usage_errors(capsys):
    assert main(["analyze", "A"]) == 2
    assert main(["sweep", "--gen-n", "9"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["sweep"])
    assert info.value.code == 2
    capsys.readouterr()


def test_sweep_corpus(tmp_path):
    corpus = tmp_path / "c.g6"
    corpus.write_text("Dhc\nCr\n")
    out = tmp_path / "r.jsonl"
    summary = tmp_path / "s.json"
    figs = tmp_path / "figs"
    res = run("sweep", "--corpus", str(corpus), "--json", str(out), "--summary", str(summary),
              "--figures", str(figs))
    assert res.returncode == 0, res.stderr
    lines = out.read_text().splitlines()
    assert [json.loads(x)["graph6"] for x in lines] == ["Dhc", "Cr"]
    s = json.loads(summary.read_text())
    assert s["total"] == 2 and sum(s["violations"].values()) == 0
    assert (figs / "summary.png").exists() and (figs / "threshold.png").exists()


def test_sweep_strict_parse_error(tmp_path):
    corpus = tmp_path / "bad.g6"
    corpus.write_text("A\n")
    assert run("sweep", "--corpus", str(corpus), "--strict").returncode == 2
    res = run("sweep", "--corpus", str(corpus))
    assert res.returncode == 0 and "1 parse errors" in res.stderr


def test_sweep_stdin_table():
    res = run("sweep", "--corpus", "-", "--table", stdin="Dhc\n")
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].split()[1] == "Dhc"


def test_sweep_empty(tmp_path):
    corpus = tmp_path / "e.g6"
    corpus.write_text("")
    out = tmp_path / "r.jsonl"
    assert run("sweep", "--corpus", str(corpus), "--json", str(out)).returncode == 0
    assert out.read_text() == ""


def test_verify(capsys):
    assert main(["verify", "--theorem", "threshold", "--gen-n", "4", "--connected"]) == 0
    assert main(["verify", "--theorem", "product-lemma", "--pairs", "50"]) == 0
    assert main(["verify", "--theorem", "phi-identity"]) == 0
    assert main(["verify", "--theorem", "w2-facts"]) == 2
    capsys.readouterr()


def test_jobs_env(monkeypatch):
    from wpgraph.harness import default_jobs
    monkeypatch.setenv("WPGRAPH_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("WPGRAPH_JOBS", "x")
    assert default_jobs() == 1
