"""End-to-end CLI tests (subprocess, byte-level)."""

import json
import os
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "rookgon.cli"]


def run_cli(*args, check=True, env_extra=None):
    env = dict(os.environ)
    env.pop("ROOKGON_CACHE", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(CMD + list(args), capture_output=True, env=env)
    if check:
        assert proc.returncode == 0, proc.stderr.decode()
    return proc


def out_json(proc):
    return json.loads(proc.stdout.decode())


# ======================================================================
# subcommands
# ======================================================================

def test_graph_gen_rook():
    proc = run_cli("graph", "gen", "--rook", "2,2")
    data = out_json(proc)
    assert data == {
        "dims": [2, 2],
        "edges": [[0, 1, 1], [0, 2, 1], [1, 3, 1], [2, 3, 1]],
        "vertex_count": 4,
    }
    assert proc.stdout.endswith(b"\n")


def test_graph_gen_complete():
    data = out_json(run_cli("graph", "gen", "--complete", "3"))
    assert data["vertex_count"] == 3
    assert len(data["edges"]) == 3


def test_reduce():
    proc = run_cli("reduce", "--rook", "2,2", "--chips", "2,0,0,0",
                   "--vertex", "2")
    assert out_json(proc) == {
        "firing_counts": [1, 0, 0, 0],
        "kind": "reduce",
        "reduced": [0, 1, 1, 0],
        "vertex": 2,
    }


def test_rank():
    data = out_json(run_cli("rank", "--rook", "2,3",
                            "--chips", "0,0,0,1,1,1"))
    assert data["rank"] == 1
    assert data["winnable"] is True
    assert data["degree"] == 3
    # negative chip counts need the = form so argparse keeps the dash
    data = out_json(run_cli("rank", "--rook", "2,2", "--chips=-1,0,0,0"))
    assert data["rank"] == -1
    assert data["winnable"] is False


def test_gonality_record():
    proc = run_cli("gonality", "--rook", "2,3")
    data = out_json(proc)
    assert data["kind"] == "gonality"
    assert data["value"] == 3
    assert data["witness"] == [0, 0, 0, 1, 1, 1]
    assert data["exhaustive"] is True
    assert data["refuted_degrees"] == [1, 2]
    assert data["orbit_counts"] == {"1": 1, "2": 4}
    assert data["symmetry"] is True
    assert data["witness_digest"] == "ffa9a1368b97"
    assert data["witness_slice_stats"] == {
        "poorest_column_chips": 1, "poorest_row_chips": 0}
    assert "time" not in data


def test_gonality_no_symmetry_and_k():
    data = out_json(run_cli("gonality", "--rook", "2,2", "--no-symmetry"))
    assert data["symmetry"] is False
    assert data["value"] == 2
    data = out_json(run_cli("gonality", "--rook", "2,2", "--k", "2"))
    assert data["value"] == 3


def test_gonality_from_graph_file(tmp_path):
    gfile = tmp_path / "g.json"
    gfile.write_bytes(run_cli("graph", "gen", "--rook", "2,3").stdout)
    data = out_json(run_cli("gonality", "--graph", str(gfile)))
    assert data["value"] == 3
    assert data["dims"] == [2, 3]


def test_gonality_csv():
    proc = run_cli("gonality", "--rook", "2,3", "--format", "csv")
    lines = proc.stdout.decode().splitlines()
    assert lines[0] == "kind,dims,k,value,witness_digest,time"
    assert lines[1] == "gonality,2x3,1,3,ffa9a1368b97,"


def test_scramble_order_star():
    data = out_json(run_cli("scramble", "order", "--family", "star",
                            "--dims", "4,4"))
    assert data["kind"] == "order"
    assert data["family"] == "star"
    assert data["egg_count"] == 176
    assert data["hitting_number"] == 11
    assert data["min_egg_cut"] == 12
    assert data["cut_exact"] is True
    assert data["order"] == data["value"] == 11
    assert len(data["max_avoidance"]) == 5


def test_scramble_order_uniform():
    data = out_json(run_cli("scramble", "order", "--family", "uniform",
                            "--dims", "2,3", "--k", "1"))
    assert data["order"] == 3
    assert data["hitting_number"] == 6
    assert data["min_egg_cut"] == 3
    assert data["witness_digest"] == "0061dfc057e4"


def test_scramble_order_star_squares_floor():
    data = out_json(run_cli("scramble", "order", "--family", "star-squares",
                            "--dims", "6,6", "--cut-mode", "floor"))
    assert data["hitting_number"] == 27
    assert data["min_egg_cut"] == 28
    assert data["cut_exact"] is False
    assert data["order"] == 27
    assert data["egg_count"] == 50697


def test_scramble_order_from_file(tmp_path):
    sfile = tmp_path / "s.json"
    sfile.write_text(json.dumps(
        {"host": [2, 3], "eggs": [[0], [1], [2], [3], [4], [5]]}))
    data = out_json(run_cli("scramble", "order", "--file", str(sfile)))
    assert data["order"] == 3


def test_scramble_avoidance_staircase():
    data = out_json(run_cli("scramble", "avoidance",
                            "--construction", "staircase", "--dims", "4,5"))
    assert data == {
        "component_sizes": [2, 2, 2],
        "components": [[0, 1], [7, 8], [14, 19]],
        "construction": "staircase",
        "kind": "avoidance",
        "params": {"dims": [4, 5]},
        "size": 6,
        "vertices": [0, 1, 7, 8, 14, 19],
    }


def test_scramble_avoidance_cube_diagonal():
    data = out_json(run_cli("scramble", "avoidance",
                            "--construction", "cube-diagonal", "--n", "3"))
    assert data["size"] == 10
    assert data["component_sizes"] == [2, 2, 2, 2, 2]
    assert data["vertices"] == [1, 2, 3, 6, 9, 13, 17, 18, 22, 26]


def test_verify_smoke():
    proc = run_cli("verify", "--suite", "smoke")
    data = out_json(proc)
    assert data["suite"] == "smoke"
    assert data["counts"]["fail"] == 0
    assert data["counts"]["pass"] == len(data["claims"])
    assert b"[suite] PASS" in proc.stderr


def test_verify_budget_skips_exit_zero():
    proc = run_cli("verify", "--suite", "smoke", "--budget-secs", "0")
    data = out_json(proc)
    assert data["counts"]["skipped"] == len(data["claims"])


# ======================================================================
# output handling and determinism
# ======================================================================

def test_output_file_matches_stdout(tmp_path):
    stdout_run = run_cli("gonality", "--rook", "2,2")
    ofile = tmp_path / "out.json"
    file_run = run_cli("gonality", "--rook", "2,2", "-o", str(ofile))
    assert ofile.read_bytes() == stdout_run.stdout
    assert file_run.stdout == b""


def test_repeat_runs_are_byte_identical():
    a = run_cli("scramble", "order", "--family", "star", "--dims", "3,4")
    b = run_cli("scramble", "order", "--family", "star", "--dims", "3,4")
    assert a.stdout == b.stdout


def test_canonical_json_formatting():
    raw = run_cli("gonality", "--rook", "2,2").stdout.decode()
    assert raw.endswith("\n")
    body = raw[:-1]
    assert "\n" not in body and ": " not in body and ", " not in body
    keys = list(json.loads(body))
    assert keys == sorted(keys)


def test_timings_flag_adds_time_key():
    data = out_json(run_cli("gonality", "--rook", "2,2", "--timings"))
    assert "time" in data and data["time"] >= 0.0


# ======================================================================
# caching
# ======================================================================

def test_cache_roundtrip(tmp_path):
    cache = tmp_path / "cache"
    args = ("gonality", "--rook", "2,3", "--cache-dir", str(cache))
    first = run_cli(*args)
    entries = list(cache.iterdir())
    assert len(entries) == 1
    second = run_cli(*args)
    assert second.stdout == first.stdout
    assert list(cache.iterdir()) == entries


def test_cache_key_ignores_threads(tmp_path):
    cache = tmp_path / "cache"
    run_cli("gonality", "--rook", "2,3", "--cache-dir", str(cache))
    run_cli("gonality", "--rook", "2,3", "--threads", "2",
            "--cache-dir", str(cache))
    assert len(list(cache.iterdir())) == 1


def test_cache_corruption_recovers(tmp_path):
    cache = tmp_path / "cache"
    args = ("gonality", "--rook", "2,2", "--cache-dir", str(cache))
    first = run_cli(*args)
    entry = next(cache.iterdir())
    entry.write_text("{broken")
    second = run_cli(*args)
    assert second.stdout == first.stdout
    assert b"cache" in second.stderr.lower()
    assert json.loads(entry.read_text()) == out_json(first)


def test_cache_env_var(tmp_path):
    cache = tmp_path / "envcache"
    run_cli("gonality", "--rook", "2,2",
            env_extra={"ROOKGON_CACHE": str(cache)})
    assert len(list(cache.iterdir())) == 1


def test_timings_bypasses_cache(tmp_path):
    cache = tmp_path / "cache"
    run_cli("gonality", "--rook", "2,2", "--timings",
            "--cache-dir", str(cache))
    assert not cache.exists() or not list(cache.iterdir())


# ======================================================================
# errors
# ======================================================================

def test_usage_errors_exit_two():
    cases = [
        ("gonality",),                                   # no graph given
        ("gonality", "--rook", "1,3"),                   # bad dims
        ("rank", "--rook", "2,2"),                       # no chips
        ("reduce", "--rook", "2,2", "--chips", "0,0,0,0", "--vertex", "9"),
        ("scramble", "order", "--family", "star", "--dims", "9"),
        ("scramble", "order", "--family", "uniform", "--dims", "2,3"),
        ("scramble", "avoidance", "--construction", "staircase",
         "--dims", "9"),
        ("scramble", "avoidance", "--construction", "staircase",
         "--dims", "4,9"),
        ("gonality", "--graph", "/nonexistent/g.json"),
    ]
    for args in cases:
        proc = run_cli(*args, check=False)
        assert proc.returncode == 2, args
        assert proc.stderr, args


def test_clear_message_for_short_dims():
    proc = run_cli("scramble", "order", "--family", "star", "--dims", "9",
                   check=False)
    assert b"exactly two dims" in proc.stderr


def test_argparse_errors():
    proc = run_cli("frobnicate", check=False)
    assert proc.returncode == 2
    proc = run_cli("gonality", "--rook", "2,2", "--format", "xml",
                   check=False)
    assert proc.returncode == 2
