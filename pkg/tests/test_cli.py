from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from dommodel.cli import main
from dommodel.constructions import complete, cycle, join, k55_minus_matching, petersen, random_regular
from dommodel.graph import parse_graph6, to_graph6
from dommodel.models import DominatingModel, verify_dominating_model
from dommodel.subdivision import SubdivisionEmbedding, verify_subdivision

C5_JOIN_K2 = join(cycle(5), complete(2))


def run(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def records(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


# -- gen -------------------------------------------------------------------------------


def test_gen_named(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["gen", "k55-minus-matching"])
    assert code == 0 and parse_graph6(out.strip()) == k55_minus_matching()
    code, out, _ = run(monkeypatch, capsys, ["gen", "one-subdivision", "--of", "k5"])
    assert parse_graph6(out.strip()).n == 15
    code, out, _ = run(monkeypatch, capsys, ["gen", "complete", "--n", "3", "--format", "json"])
    assert json.loads(out) == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}


def test_gen_split_enumeration(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["gen", "split-k5", "--enumerate"])
    assert code == 0 and len(out.split()) == 22


def test_gen_random_regular_count(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["gen", "random-regular", "--n", "12", "--d", "3", "--seed", "5", "--count", "3"])
    lines = out.split()
    assert code == 0 and len(lines) == 3
    assert parse_graph6(lines[1]) == random_regular(12, 3, seed=6)


def test_gen_errors(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["gen", "bogus"])
    assert code == 2 and "unknown generator" in err
    code, _, err = run(monkeypatch, capsys, ["gen", "cycle"])
    assert code == 2
    code, _, _ = run(monkeypatch, capsys, ["frobnicate"])
    assert code == 2


# -- find-model --------------------------------------------------------------------------


def test_find_model_records(monkeypatch, capsys):
    stdin = "\n".join(to_graph6(g) for g in (k55_minus_matching(), complete(5), C5_JOIN_K2)) + "\n"
    code, out, _ = run(monkeypatch, capsys, ["find-model", "--t", "5", "--dominating"], stdin)
    recs = records(out)
    assert code == 0 and [r["index"] for r in recs] == [0, 1, 2]
    assert recs[0]["model"] is None
    assert [len(s) for s in recs[1]["model"]["branch_sets"]] == [1] * 5
    m = DominatingModel.from_dict(recs[2]["model"])
    assert verify_dominating_model(C5_JOIN_K2, m) == []
    assert all("perf" in r for r in recs)


def test_find_model_standard_and_clique(monkeypatch, capsys):
    stdin = to_graph6(k55_minus_matching()) + "\n"
    code, out, _ = run(monkeypatch, capsys, ["find-model", "--t", "5", "--standard", "--stable"], stdin)
    (rec,) = records(out)
    assert rec["model"] is not None and "perf" not in rec
    stdin = to_graph6(complete(5)) + "\n"
    code, out, _ = run(monkeypatch, capsys, ["find-model", "--t", "3", "--clique", "4,3", "--mode", "general"], stdin)
    (rec,) = records(out)
    assert 4 in rec["model"]["branch_sets"][0]


def test_find_model_bad_line(monkeypatch, capsys):
    stdin = "garbage\n" + to_graph6(complete(5)) + "\n"
    code, out, _ = run(monkeypatch, capsys, ["find-model", "--t", "5"], stdin)
    recs = records(out)
    assert code == 1 and "error" in recs[0] and recs[1]["model"] is not None


def test_find_model_usage_errors(monkeypatch, capsys):
    code, _, _ = run(monkeypatch, capsys, ["find-model", "--clique", "a,b"], "")
    assert code == 2
    code, _, _ = run(monkeypatch, capsys, ["find-model", "--mode", "fast"], "")
    assert code == 2


# -- check-theorem ----------------------------------------------------------------------


def test_check_theorem_builtin(monkeypatch, capsys, tmp_path):
    report = tmp_path / "report.jsonl"
    code, out, _ = run(monkeypatch, capsys, ["check-theorem", "--max-n", "6", "--extract", "--stable", "--report", str(report)])
    recs = records(out)
    summary = recs[-1]["summary"]
    assert code == 0
    assert summary["graphs"] == 208 and summary["failures"] == 0
    assert summary["five_chromatic"] == summary["extracted"] > 0
    assert report.read_text() == out
    for rec in recs[:-1]:
        if "embedding" in rec:
            g = parse_graph6(rec["graph6"])
            assert verify_subdivision(g, SubdivisionEmbedding.from_dict(rec["embedding"])) == []


def test_check_theorem_max_n_7_extract_then_verify(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["check-theorem", "--max-n", "7", "--extract", "--stable"])
    recs = records(out)
    summary = recs[-1]["summary"]
    assert code == 0 and summary["graphs"] == 1252 and summary["failures"] == 0
    embedded = [r for r in recs[:-1] if "embedding" in r]
    assert len(embedded) == summary["five_chromatic"] == summary["extracted"]
    # every extractor output passes the verify subcommand
    for rec in embedded:
        artifact = json.dumps(rec["embedding"])
        code, out, _ = run(monkeypatch, capsys, ["verify", "--kind", "subdivision", "--graph", rec["graph6"], "--artifact", artifact])
        assert code == 0 and json.loads(out)["ok"] is True


def test_check_theorem_stdin_cubic(monkeypatch, capsys):
    stdin = "".join(to_graph6(random_regular(10 + 2 * (s % 4), 3, seed=s)) + "\n" for s in range(100))
    code, out, _ = run(monkeypatch, capsys, ["check-theorem"], stdin)
    recs = records(out)
    assert code == 0 and len(recs) == 101 and all(r["model"] is None for r in recs[:-1])


def test_check_theorem_errors(monkeypatch, capsys, tmp_path):
    code, _, _ = run(monkeypatch, capsys, ["check-theorem", "--max-n", "8"])
    assert code == 2
    code, _, _ = run(monkeypatch, capsys, ["check-theorem", "--report", str(tmp_path / "missing" / "r.jsonl")], "")
    assert code == 3
    code, out, _ = run(monkeypatch, capsys, ["check-theorem"], "bad!\n")
    assert code == 1 and records(out)[-1]["summary"]["errors"] == 1


# -- verify ------------------------------------------------------------------------------


def test_verify_model(monkeypatch, capsys):
    k5 = to_graph6(complete(5))
    good = json.dumps({"t": 5, "branch_sets": [[0], [1], [2], [3], [4]]})
    code, out, _ = run(monkeypatch, capsys, ["verify", "--kind", "model", "--graph", k5, "--artifact", good])
    assert code == 0 and json.loads(out) == {"ok": True, "violations": []}
    c5 = to_graph6(cycle(5))
    tampered = json.dumps({"t": 3, "branch_sets": [[0], [2], [4]]})
    code, out, _ = run(monkeypatch, capsys, ["verify", "--kind", "model", "--graph", c5, "--artifact", tampered])
    assert code == 1 and json.loads(out)["violations"][0]["kind"] == "undominated"


def test_verify_other_kinds(monkeypatch, capsys, tmp_path):
    c4 = to_graph6(cycle(4))
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "colouring", "--graph", c4, "--artifact", '{"budget":2,"colours":[1,2,1,2]}'])
    assert code == 0
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "colouring", "--graph", c4, "--artifact", '{"budget":2,"colours":[1,1,1,2]}'])
    assert code == 1
    k6 = complete(6)
    from dommodel.subdivision import find_subdivision

    emb = find_subdivision(k6, complete(5))
    path = tmp_path / "emb.json"
    path.write_text(emb.to_json())
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "subdivision", "--graph", to_graph6(k6), "--artifact", str(path)])
    assert code == 0
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "model", "--graph", c4, "--artifact", str(tmp_path / "nope.json")])
    assert code == 3
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "model", "--graph", c4, "--artifact", "{not json"])
    assert code == 2


def test_verify_standard_flag(monkeypatch, capsys):
    g = to_graph6(k55_minus_matching())
    pairs = json.dumps({"t": 5, "branch_sets": [[i, 5 + (i + 1) % 5] for i in range(5)]})
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "model", "--standard", "--graph", g, "--artifact", pairs])
    assert code == 0
    code, _, _ = run(monkeypatch, capsys, ["verify", "--kind", "model", "--graph", g, "--artifact", pairs])
    assert code == 1


# -- chromatic ------------------------------------------------------------------------


def test_chromatic(monkeypatch, capsys):
    stdin = "\n".join(to_graph6(g) for g in (petersen(), complete(5), k55_minus_matching())) + "\n"
    code, out, _ = run(monkeypatch, capsys, ["chromatic", "--stable"], stdin)
    assert code == 0 and [r["chi"] for r in records(out)] == [3, 5, 2]


# -- determinism and the installed entry point ------------------------------------------


def _cli(args, stdin="", env_workers=None):
    import os

    env = dict(os.environ)
    if env_workers is not None:
        env["DOMMODEL_WORKERS"] = str(env_workers)
    proc = subprocess.run([sys.executable, "-m", "dommodel", *args], input=stdin, capture_output=True, text=True, env=env, timeout=600)
    return proc.returncode, proc.stdout


def test_output_independent_of_worker_count():
    one = _cli(["check-theorem", "--max-n", "6", "--extract", "--stable", "--workers", "1"])
    three = _cli(["check-theorem", "--max-n", "6", "--extract", "--stable", "--workers", "3"])
    env = _cli(["check-theorem", "--max-n", "6", "--extract", "--stable"], env_workers=2)
    assert one[0] == three[0] == env[0] == 0
    assert one[1] == three[1] == env[1]


def test_repeat_runs_are_byte_identical():
    stdin = "\n".join(to_graph6(g) for g in (C5_JOIN_K2, petersen(), complete(6))) + "\n"
    a = _cli(["find-model", "--t", "5", "--stable"], stdin)
    b = _cli(["find-model", "--t", "5", "--stable", "--workers", "2"], stdin)
    assert a == b and a[0] == 0


@pytest.mark.parametrize("flag", ["--help"])
def test_module_help(flag):
    code, out = _cli([flag])
    assert code == 0 and "check-theorem" in out
