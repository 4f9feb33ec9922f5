"""Command line interface: exit codes, output formats, the serve protocol."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from gridhack.cli import main

CORPUS = Path(__file__).resolve().parent.parent / "src" / "gridhack" / "data" / "corpus"
RIVERS = str(CORPUS / "rivers.des")


def run_main(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tasks_lists_all_78(capsys):
    code, out, err = run_main(["tasks"], capsys)
    assert code == 0
    names = out.strip().split("\n")
    assert len(names) == 78
    assert "Room-5x5" in names and "Boxoban-Hard" in names


def test_compile_summary_and_quiet(capsys):
    code, out, err = run_main(["compile", RIVERS], capsys)
    assert code == 0
    assert "level:" in out and "size:" in out and "stairs:" in out
    code, out, err = run_main(["compile", RIVERS, "--quiet"], capsys)
    assert code == 0
    assert out == ""


def test_compile_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.des"
    bad.write_text('MAZE: "x", \' \'\nMAP\n...\nENDMAP\nSTAIR: random, sideways\n')
    code, out, err = run_main(["compile", str(bad)], capsys)
    assert code == 1
    assert "5" in err  # the offending line number


def test_missing_file_is_user_error(capsys):
    code, out, err = run_main(["compile", "no/such/file.des"], capsys)
    assert code == 1
    assert "error:" in err


def test_unknown_task_is_user_error(capsys):
    code, out, err = run_main(["rollout", "Room-3x3"], capsys)
    assert code == 1


def test_bad_flag_is_user_error(capsys):
    code, out, err = run_main(["rollout", "Room-5x5", "--bogus"], capsys)
    assert code == 1


def test_unknown_subcommand_is_user_error(capsys):
    code, out, err = run_main(["transmogrify"], capsys)
    assert code == 1


def test_sample_json_is_canonical(capsys):
    code, out, err = run_main(
        ["sample", "Room-5x5", "--render", "json", "--seed", "5"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["seed"] == 5
    assert json.dumps(rec, sort_keys=True, separators=(",", ":")) == out.strip()
    assert len(rec["obs"]["chars"]) == 21
    assert isinstance(rec["obs"]["message"], str)


def test_sample_ansi_renders_map(capsys):
    code, out, err = run_main(["sample", RIVERS, "--seed", "1"], capsys)
    assert code == 0
    assert "@" in out


def test_seed_flag_accepted_before_and_after_subcommand(capsys):
    _, a, _ = run_main(["--seed", "9", "sample", "Room-5x5", "--render", "json"],
                       capsys)
    _, b, _ = run_main(["sample", "Room-5x5", "--render", "json", "--seed", "9"],
                       capsys)
    assert a == b
    _, c, _ = run_main(["sample", "Room-5x5", "--render", "json", "--seed", "8"],
                       capsys)
    assert a != c


def test_rollout_reports_throughput(capsys):
    code, out, err = run_main(
        ["rollout", "Room-5x5", "--episodes", "2", "--seed", "3"], capsys)
    assert code == 0
    assert "steps/sec:" in out
    assert "episode 0:" in out and "episode 1:" in out


def test_rollout_json_trace_is_reproducible(capsys):
    argv = ["rollout", "Room-5x5", "--episodes", "2", "--seed", "3", "--json"]
    _, a, _ = run_main(argv, capsys)
    _, b, _ = run_main(argv, capsys)
    assert a == b
    rec = json.loads(a)
    assert len(rec["episodes"]) == 2
    step = rec["episodes"][0]["trace"][0]
    assert set(step) == {"action", "reward", "done", "obs_md5"}
    assert len(step["obs_md5"]) == 32


def test_rollout_obs_presets_change_digests(capsys):
    base = ["rollout", "Room-5x5", "--episodes", "1", "--seed", "3", "--json"]
    _, default, _ = run_main(base, capsys)
    _, crop, _ = run_main(base + ["--obs", "crop"], capsys)
    d0 = json.loads(default)["episodes"][0]["trace"][0]["obs_md5"]
    c0 = json.loads(crop)["episodes"][0]["trace"][0]["obs_md5"]
    assert d0 != c0


def test_check_task_report(capsys):
    code, out, err = run_main(["check", "Room-5x5", "--seeds", "5"], capsys)
    assert code == 0
    assert "task: Room-5x5" in out
    assert "solvable: 5/5" in out


def test_check_des_file_report(capsys):
    code, out, err = run_main(["check", RIVERS, "--seeds", "5"], capsys)
    assert code == 0
    assert "compiled: 5/5" in out


# ---------------------------------------------------------------- serve

class Serve:
    def __init__(self):
        self.proc = subprocess.Popen(
            [sys.executable, "-m", "gridhack", "serve"],
            stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            stderr=subprocess.PIPE, text=True)
        hello = json.loads(self.proc.stdout.readline())
        assert hello == {"protocol": 1}

    def rpc(self, **req):
        self.proc.stdin.write(json.dumps(req) + "\n")
        self.proc.stdin.flush()
        return json.loads(self.proc.stdout.readline())

    def raw(self, line):
        self.proc.stdin.write(line + "\n")
        self.proc.stdin.flush()
        return json.loads(self.proc.stdout.readline())

    def close(self):
        self.proc.stdin.close()
        self.proc.wait(timeout=10)


@pytest.fixture
def serve():
    s = Serve()
    yield s
    s.close()


def test_serve_session_lifecycle(serve):
    made = serve.rpc(cmd="make", task="Room-5x5")
    assert made["ok"] and made["env"] == 1
    assert "N" in made["actions"]
    reset = serve.rpc(cmd="reset", env=1, seed=7)
    assert reset["ok"]
    assert len(reset["obs"]["chars"]) == 21
    stepped = serve.rpc(cmd="step", env=1, action="E")
    assert stepped["ok"]
    assert isinstance(stepped["reward"], float) or stepped["reward"] == 0
    assert stepped["done"] in (True, False)
    closed = serve.rpc(cmd="close", env=1)
    assert closed["ok"]
    gone = serve.rpc(cmd="step", env=1, action="E")
    assert not gone["ok"] and gone["error"] == "bad_env"


def test_serve_error_codes(serve):
    assert serve.raw("{nope")["error"] == "bad_json"
    assert serve.rpc(cmd="warp")["error"] == "unknown_cmd"
    assert serve.rpc(cmd="make", task="NoSuch")["error"] == "unknown_task"
    made = serve.rpc(cmd="make", task="Room-5x5")
    env = made["env"]
    assert serve.rpc(cmd="step", env=env, action="E")["error"] == "not_reset"
    serve.rpc(cmd="reset", env=env, seed=0)
    assert serve.rpc(cmd="step", env=env, action="zzz")["error"] == "bad_action"
    assert serve.rpc(cmd="make", task="Room-5x5",
                     overrides={"nonsense": 1})["error"] == "bad_override"


def test_serve_des_override_builds_custom_level(serve):
    des = (
        'MAZE: "mini", \' \'\nGEOMETRY: left, top\n'
        "MAP\n----\n|.>|\n----\nENDMAP\n"
        'REGION: (0,0,3,2), lit, "ordinary"\n'
        "BRANCH: (1,1,1,1), (0,0,0,0)\n"
    )
    made = serve.rpc(cmd="make", task="Room-5x5", overrides={"des": des})
    env = made["env"]
    serve.rpc(cmd="reset", env=env, seed=0)
    stepped = serve.rpc(cmd="step", env=env, action="E")
    assert stepped["done"] and stepped["reward"] == 1.0
    done_again = serve.rpc(cmd="step", env=env, action="E")
    assert done_again["error"] == "episode_done"


def test_serve_multiple_environments(serve):
    a = serve.rpc(cmd="make", task="Room-5x5")["env"]
    b = serve.rpc(cmd="make", task="Eat")["env"]
    assert a != b
    serve.rpc(cmd="reset", env=a, seed=1)
    serve.rpc(cmd="reset", env=b, seed=1)
    ra = serve.rpc(cmd="step", env=a, action="N")
    rb = serve.rpc(cmd="step", env=b, action="eat")
    assert ra["ok"] and rb["ok"]


def test_serve_matches_inprocess_digests(serve, capsys):
    import hashlib

    main(["rollout", "Room-5x5", "--episodes", "1", "--seed", "11", "--json"])
    trace = json.loads(capsys.readouterr().out)["episodes"][0]["trace"]
    made = serve.rpc(cmd="make", task="Room-5x5")
    env = made["env"]
    serve.rpc(cmd="reset", env=env, seed=11)
    # replay the recorded actions; the served observations must hash equal
    for i, step in enumerate(trace):
        reply = serve.rpc(cmd="step", env=env, action=step["action"])
        assert reply["ok"], reply
        blob = json.dumps(reply["obs"], sort_keys=True,
                          separators=(",", ":")).encode()
        assert hashlib.md5(blob).hexdigest() == step["obs_md5"], f"step {i}"
        assert reply["done"] == step["done"]
        if reply["done"]:
            break
