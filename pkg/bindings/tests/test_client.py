"""Client behavior against a live engine subprocess."""

import hashlib
import json
import subprocess
import sys

import numpy as np
import pytest

import gridhack_client as ghc
from gridhack_client import (EngineCrashed, EnvClient, IllegalAction,
                             ProtocolError)


def _wire_form(obs):
    return {k: v.tolist() if isinstance(v, np.ndarray) else v
            for k, v in obs.items()}


def _digest(obs):
    blob = json.dumps(_wire_form(obs), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.md5(blob).hexdigest()


def _cli_trace(task, seed):
    proc = subprocess.run(
        [sys.executable, "-m", "gridhack", "rollout", task, "--episodes",
         "1", "--seed", str(seed), "--json"],
        capture_output=True, text=True, timeout=300, check=True)
    return json.loads(proc.stdout)["episodes"][0]["trace"]


# ----------------------------------------------------------------- basics

def test_make_exposes_action_table():
    with ghc.make("Room-5x5") as env:
        assert env.protocol == 1
        assert env.task == "Room-5x5"
        assert env.actions == ("N", "S", "E", "W", "NE", "NW", "SE", "SW")
        assert "chars" in env.obs_keys


def test_scripted_solve_reaches_reward_one():
    with ghc.make("Room-5x5") as env:
        obs = env.reset(seed=0)
        assert obs["chars"].shape == (21, 79)
        assert obs["chars"].dtype == np.uint8
        done = False
        reward = 0.0
        for _ in range(10):
            obs, reward, done, info = env.step(env.actions.index("SE"))
            if done:
                break
        assert done and reward == 1.0
        assert info["end_status"] == "success"


def test_step_before_reset_is_an_error():
    with ghc.make("Room-5x5") as env:
        with pytest.raises(RuntimeError, match="before reset"):
            env.step(0)


def test_illegal_actions_rejected():
    with ghc.make("Room-5x5") as env:
        env.reset(seed=0)
        with pytest.raises(IllegalAction):
            env.step(999)
        with pytest.raises(IllegalAction):
            env.step("zap")             # not in the navigation action set


def test_unknown_task_raises_value_error():
    with pytest.raises(ValueError, match="Room-7x7"):
        ghc.make("Room-7x7")


def test_overrides_apply():
    with ghc.make("Room-5x5", overrides={"max_steps": 3}) as env:
        env.reset(seed=0)
        done = False
        for _ in range(3):
            obs, r, done, info = env.step("N")
        assert done and info["end_status"] == "timeout"


def test_render_shows_agent():
    with ghc.make("Room-5x5") as env:
        env.reset(seed=0)
        text = env.render()
        assert "@" in text and ">" in text


def test_render_before_reset_errors():
    with ghc.make("Room-5x5") as env:
        with pytest.raises(RuntimeError, match="render before reset"):
            env.render()


# ------------------------------------------------------------ error paths

def test_protocol_version_mismatch_fails_construction(tmp_path):
    fake = tmp_path / "fake_engine.py"
    fake.write_text(
        "import json, sys\n"
        "print(json.dumps({'protocol': 2}))\n"
        "sys.stdout.flush()\n"
        "sys.stdin.read()\n")
    with pytest.raises(ProtocolError, match="protocol 2"):
        ghc.make("Room-5x5", engine_bin="%s %s" % (sys.executable, fake))


def test_garbage_hello_fails_construction(tmp_path):
    fake = tmp_path / "fake_engine.py"
    fake.write_text("print('hello there')\n")
    with pytest.raises((ProtocolError, EngineCrashed)):
        ghc.make("Room-5x5", engine_bin="%s %s" % (sys.executable, fake))


def test_missing_binary_raises_engine_crashed():
    with pytest.raises(EngineCrashed):
        ghc.make("Room-5x5", engine_bin="/nonexistent/engine-binary")


def test_dead_engine_raises_engine_crashed():
    env = ghc.make("Room-5x5")
    env.reset(seed=0)
    env._proc.kill()
    env._proc.wait()
    with pytest.raises(EngineCrashed):
        env.step(0)
    env.close()


# ------------------------------------------------------------- lifecycles

def test_close_terminates_child_and_is_idempotent():
    env = ghc.make("Room-5x5")
    proc = env._proc
    env.close()
    assert proc.poll() is not None
    env.close()                        # second close is a no-op
    with pytest.raises(EngineCrashed):
        env.reset(seed=0)


def test_hundred_create_close_cycles_leave_no_orphans():
    procs = []
    for i in range(100):
        env = ghc.make("Room-5x5")
        if i % 10 == 0:
            env.reset(seed=i)
        procs.append(env._proc)
        env.close()
    assert all(p.poll() is not None for p in procs)


def test_two_clients_are_independent():
    with ghc.make("Room-5x5") as a, ghc.make("Room-15x15") as b:
        oa = a.reset(seed=3)
        ob = b.reset(seed=3)
        assert not np.array_equal(oa["chars"], ob["chars"])
        a.step("E")
        b.step("E")


# ---------------------------------------------------------------- parity

PARITY_RUNS = (
    ("Room-5x5", 0), ("Room-15x15-Dark", 1), ("Corridor-R2", 2),
    ("MazeWalk-9x9", 3), ("KeyRoom-S5", 4), ("River-Narrow", 5),
    ("HideNSeek", 6), ("Memento-Short-F2", 7), ("MazeExplore-Easy", 8),
    ("Boxoban-Unfiltered", 9),
)


@pytest.mark.parametrize("task,seed", PARITY_RUNS)
def test_rollout_parity_with_cli(task, seed):
    trace = _cli_trace(task, seed)
    with ghc.make(task) as env:
        env.reset(seed=seed)
        for i, step in enumerate(trace):
            obs, reward, done, info = env.step(step["action"])
            assert _digest(obs) == step["obs_md5"], (task, i)
            assert round(reward, 9) == step["reward"], (task, i)
            assert done == step["done"], (task, i)
            if done:
                break
