import json

import pytest

from silt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_show_hereditary(capsys):
    code, out, _ = run(capsys, "algebra", "show", "--builtin", "hereditary", "--n", "2")
    assert code == 0
    assert "dimension 4" in out
    assert "P_1: [1, 1]" in out


def test_algebra_show_auslander(capsys):
    code, out, _ = run(capsys, "algebra", "show", "--builtin", "auslander_bass_v",
                       "--n", "1")
    assert code == 0
    assert "dimension 4" in out


def test_algebra_show_file(tmp_path, capsys):
    doc = {
        "field": {"p": 32003},
        "quiver": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
        "relations": [],
        "nilpotency_bound": 2,
    }
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "algebra", "show", "--file", str(path))
    assert code == 0
    assert "dimension 3" in out


def test_malformed_file_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\n  broken\n}")
    code, _, err = run(capsys, "algebra", "show", "--file", str(path))
    assert code == 3
    assert "bad.json:2" in err


def test_bad_relation_reports_index(tmp_path, capsys):
    doc = {
        "field": {"p": 32003},
        "quiver": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
        "relations": [[[1, ["a", "a"]]]],
        "nilpotency_bound": 2,
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "algebra", "show", "--file", str(path))
    assert code == 3
    assert "non-composable" in err or "relation" in err


def test_missing_source(capsys):
    code, _, err = run(capsys, "explore")
    assert code == 3
    assert "algebra source" in err


def test_explore_counts(capsys):
    code, out, _ = run(capsys, "explore", "--builtin", "hereditary", "--n", "3",
                       "--workers", "1")
    assert code == 0
    assert "20 silting modules" in out
    assert "COMPLETE" in out
    assert "hasse check: OK" in out
    code, out, _ = run(capsys, "explore", "--builtin", "triangular_a2",
                       "--workers", "1")
    assert code == 0
    assert "5 silting modules" in out
    code, out, _ = run(capsys, "explore", "--builtin", "auslander_bass_v",
                       "--n", "2", "--workers", "1")
    assert code == 0
    assert "24 silting modules" in out


def test_explore_incomplete_banner_exit_zero(capsys):
    code, out, _ = run(capsys, "explore", "--builtin", "hereditary", "--n", "3",
                       "--max-nodes", "4", "--workers", "1")
    assert code == 0
    assert "INCOMPLETE" in out


def test_explore_json_out(tmp_path, capsys):
    out_path = tmp_path / "eq.json"
    code, _, _ = run(capsys, "explore", "--builtin", "triangular_a2",
                     "--format", "json", "--out", str(out_path), "--workers", "1")
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["complete"] is True
    assert len(doc["nodes"]) == 5


def test_explore_dot_stdout(capsys):
    code, out, _ = run(capsys, "explore", "--builtin", "triangular_a2",
                       "--format", "dot", "--workers", "1")
    assert code == 0
    assert "digraph" in out


def test_cache_hit_reproduces_bytes(tmp_path, capsys):
    cache = tmp_path / "cache"
    f1 = tmp_path / "one.json"
    f2 = tmp_path / "two.json"
    for f in (f1, f2):
        code, _, _ = run(capsys, "explore", "--builtin", "hereditary", "--n", "2",
                         "--format", "json", "--out", str(f),
                         "--cache", str(cache), "--workers", "1")
        assert code == 0
    assert f1.read_bytes() == f2.read_bytes()
    assert len(list(cache.glob("*.json"))) == 1


def test_cache_env_override(tmp_path, capsys, monkeypatch):
    env_cache = tmp_path / "envcache"
    monkeypatch.setenv("SILT_CACHE", str(env_cache))
    code, _, _ = run(capsys, "explore", "--builtin", "hereditary", "--n", "1",
                     "--cache", str(tmp_path / "ignored"), "--workers", "1")
    assert code == 0
    assert env_cache.exists()
    assert not (tmp_path / "ignored").exists()


def test_tors_counts(capsys):
    code, out, _ = run(capsys, "tors", "--builtin", "hereditary", "--n", "2",
                       "--workers", "1")
    assert code == 0
    assert "9 torsion classes" in out
    code, out, _ = run(capsys, "tors", "--builtin", "hereditary", "--n", "1",
                       "--workers", "1")
    assert code == 0
    assert "3 torsion classes" in out


def test_tors_refuses_unsupported_family(capsys):
    code, _, err = run(capsys, "tors", "--builtin", "bass_v", "--workers", "1")
    assert code == 3
    assert "hereditary" in err


def test_tors_dot_output(tmp_path, capsys):
    out_path = tmp_path / "tors.dot"
    code, _, _ = run(capsys, "tors", "--builtin", "hereditary", "--n", "1",
                     "--format", "dot", "--out", str(out_path), "--workers", "1")
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("digraph") and text.count("->") == 2


def test_explore_from_file(tmp_path, capsys):
    doc = {
        "field": {"p": 32003},
        "quiver": {"vertices": ["1", "2"],
                   "arrows": [["a1", "1", "2"], ["a2", "2", "1"]]},
        "relations": [[[1, ["a1", "a2"]]], [[1, ["a2", "a1"]]]],
        "nilpotency_bound": 2,
    }
    path = tmp_path / "nakayama.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "explore", "--file", str(path), "--workers", "1")
    assert code == 0
    assert "6 silting modules" in out


def test_verify_hereditary(capsys):
    code, out, _ = run(capsys, "verify", "hereditary", "--max-n", "2")
    assert code == 0
    assert "PASS" in out


def test_verify_weak_order(capsys):
    code, out, _ = run(capsys, "verify", "weak-order", "--max-n", "1")
    assert code == 0
    assert "PASS" in out


def test_verify_reduction(capsys):
    code, out, _ = run(capsys, "verify", "reduction", "--n", "2")
    assert code == 0
    assert "PASS" in out


def test_verify_figures(capsys):
    code, out, _ = run(capsys, "verify", "figures")
    assert code == 0
    assert "PASS" in out


def test_bad_prime(capsys):
    code, _, err = run(capsys, "explore", "--builtin", "triangular_a2",
                       "--prime", "10", "--workers", "1")
    assert code == 3
    assert "prime" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    import silt.cli as cli
    monkeypatch.setattr(cli.orders, "poset_isomorphic", lambda a, b: False)
    code, out, _ = run(capsys, "verify", "reduction", "--n", "1")
    assert code == 2
    assert "FAIL" in out
    assert "MISMATCH" in out


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--max-n", "2")
    assert code == 0
    assert "PASS" in out
