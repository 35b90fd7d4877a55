import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from semibuchi import cli
from semibuchi.solver import SolverError

GAMES = Path(__file__).resolve().parent.parent / "games"
RUNNING_V = ("e[a]^inf·e[b]^inf·e[c]^inf·e[d]^inf"
             " + e[a]·e[b]·e[c]·e[e]·e[f]·e[g]^inf·e[h]·e[k]^inf·e[m]^inf"
             " + e[a]·e[b]·e[c]·e[e]^2·e[g]^inf·e[h]^2·e[k]^inf·e[m]^inf"
             " + e[a]·e[b]·e[c]·e[f]^2·e[g]^inf·e[k]^inf·e[m]^inf")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_solve_running():
    code, out, _ = call("solve", GAMES / "running.json", "--from", "v")
    assert code == 0
    assert out == RUNNING_V + "\n"


def test_solve_all_positions_blocks():
    code, out, _ = call("solve", GAMES / "loop_then_exit.json", "--from", "all")
    assert out == "# v\ne[b]·e[c]^inf\n# w\ne[c]^inf\n"


@pytest.mark.parametrize("semiring, extra, expected", [
    ("boolean", [], "1"),
    ("tropical", [], "2"),
    ("viterbi", ["--values", "b=0.5"], "1/2"),
    ("minmax:lo,mid,hi", ["--values", "b=mid"], "mid"),
    ("posbool", [], "e[b]·e[c]"),
])
def test_solve_semirings(semiring, extra, expected):
    code, out, _ = call("solve", GAMES / "loop_then_exit.json", "--from", "v", "--semiring", semiring, *extra)
    assert (code, out) == (0, expected + "\n")


def test_solve_partial_tracking():
    code, out, _ = call("solve", GAMES / "running.json", "--from", "v", "--track", "d")
    assert out == "1\n"


def test_solve_trace(tmp_path):
    trace = tmp_path / "trace.jsonl"
    call("solve", GAMES / "loop_then_exit.json", "--from", "v", "--trace", trace)
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    assert records[-1]["values"] == {"v": "e[b]·e[c]^inf", "w": "e[c]^inf"}
    assert any(r["phase"] == "saturate" for r in records)


def test_strategies():
    code, out, _ = call("strategies", GAMES / "running.json", "--from", "v", "--occurrence", "k,m")
    lines = out.splitlines()
    reports = [line for line in lines if not line.startswith("  ")]
    assert [line.split("\t")[1] for line in reports] == ["positional", "non-positional", "positional", "positional"]
    assert "  k\tfinite\te[m]^inf" in lines
    assert "  m\tinfinite\te[m]^inf" in lines


def test_repair():
    code, out, _ = call("repair", GAMES / "repair.json", "--from", "v", "--remove", "a,b", "--add", "c=w->w")
    assert (code, out) == (0, "{-a}\tminimal\n{-a,+c}\tnon-minimal\n")


def test_synth_target():
    code, out, _ = call("synth-target", GAMES / "target_arena.json", "--from", "b")
    assert out == "{a,c}\tminimal\n{b,c}\tminimal\n{a,b,c}\tnon-minimal\n"
    code, out, _ = call("synth-target", GAMES / "target_arena.json", "--from", "a", "--no-negatives")
    assert out == "{a}\tminimal\n{b,c}\tminimal\n"


def test_cost():
    assert call("cost", GAMES / "loop_then_exit.json", "--from", "v")[1] == "2\n"
    assert call("cost", GAMES / "loop_then_exit.json", "--from", "v", "--measure", "unlock")[1] == "2\n"


def test_oracle_check_match():
    code, out, _ = call("oracle-check", GAMES / "loop_then_exit.json", "--from", "v")
    assert (code, out) == (0, "MATCH\n")


def test_oracle_check_mismatch(monkeypatch):
    real = cli.solve

    def skewed(game, interp):
        sol = real(game, interp)
        sol.values["v"] = interp.semiring.one
        return sol

    monkeypatch.setattr(cli, "solve", skewed)
    code, out, _ = call("oracle-check", GAMES / "loop_then_exit.json", "--from", "v")
    assert code == cli.EXIT_MISMATCH
    assert out.splitlines()[-1] == "MISMATCH"


def test_solver_failure(monkeypatch):
    def broken(game, interp):
        raise SolverError("no fixed point")

    monkeypatch.setattr(cli, "solve", broken)
    code, _, err = call("solve", GAMES / "running.json", "--from", "v")
    assert code == cli.EXIT_SOLVER and "no fixed point" in err


@pytest.mark.parametrize("argv, code", [
    (["solve"], cli.EXIT_USAGE),
    (["frobnicate", "x.json", "--from", "v"], cli.EXIT_USAGE),
    (["solve", GAMES / "missing.json", "--from", "v"], cli.EXIT_GAME),
    (["solve", GAMES / "running.json", "--from", "nowhere"], cli.EXIT_REQUEST),
    (["solve", GAMES / "running.json", "--from", "v", "--semiring", "reals"], cli.EXIT_REQUEST),
    (["solve", GAMES / "running.json", "--from", "v", "--track", "zz"], cli.EXIT_REQUEST),
    (["solve", GAMES / "running.json", "--from", "v", "--semiring", "viterbi", "--values", "a=2"], cli.EXIT_REQUEST),
    (["repair", GAMES / "repair.json", "--from", "v", "--add", "v->w"], cli.EXIT_REQUEST),
    (["oracle-check", GAMES / "diamonds3.json", "--from", "s0"], cli.EXIT_GUARD),
    (["cost", GAMES / "running.json", "--from", "v"], cli.EXIT_COST),
    (["solve", GAMES / "running.json", "--from", "v", "--semiring", "tropical"], cli.EXIT_COST),
])
def test_error_codes(argv, code):
    assert call(*argv)[0] == code


def test_bad_game_document(tmp_path):
    path = tmp_path / "sink.json"
    path.write_text(json.dumps({"positions": [{"id": "v", "owner": 0, "target": False}], "edges": []}))
    code, _, err = call("solve", path, "--from", "v")
    assert code == cli.EXIT_GAME and "totality" in err


def test_output_is_deterministic():
    runs = {call("strategies", GAMES / "running.json", "--from", "all")[1] for _ in range(3)}
    assert len(runs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "semibuchi", "solve", str(GAMES / "loop_then_exit.json"),
                           "--from", "v"], capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout == "e[b]·e[c]^inf\n"
