"""Client for the engine's ``serve`` subprocess.

``make()`` spawns one engine process per client and speaks newline-delimited
JSON over its stdin/stdout.  Observation grids arrive as nested lists and are
handed to the caller as numpy arrays; everything else passes through as
received.
"""

from __future__ import annotations

import json
import os
import shlex
import subprocess

import numpy as np

PROTOCOL = 1

_UINT8_KEYS = frozenset(("chars", "colors", "ids", "crop_chars",
                         "crop_colors", "crop_ids", "inv_letters",
                         "inv_strs"))
_INT64_KEYS = frozenset(("stats",))


class EngineCrashed(RuntimeError):
    """The engine process exited (or never started)."""


class ProtocolError(RuntimeError):
    """The engine sent a frame the client cannot understand."""


class IllegalAction(ValueError):
    """The action is not part of this environment's action set."""


def _engine_command(engine_bin: str | None) -> list[str]:
    source = engine_bin or os.environ.get("ENGINE_BIN") or "gridhack"
    return shlex.split(source)


def _to_arrays(obs: dict) -> dict:
    out = {}
    for key, value in obs.items():
        if key in _UINT8_KEYS:
            out[key] = np.asarray(value, dtype=np.uint8)
        elif key in _INT64_KEYS:
            out[key] = np.asarray(value, dtype=np.int64)
        else:
            out[key] = value            # message text, cell descriptions
    return out


class EnvClient:
    """One environment backed by one engine subprocess.

    Construct through :func:`make`.  Not shareable across threads without
    external locking; ``close()`` (or use as a context manager) terminates
    the subprocess.
    """

    def __init__(self, task: str, overrides: dict | None = None,
                 engine_bin: str | None = None):
        self.task = task
        self.protocol = None
        self.env_id = None
        self.actions: tuple = ()
        self.obs_keys: tuple = ()
        self.last_obs = None
        self._been_reset = False
        self._closed = False
        cmd = _engine_command(engine_bin) + ["serve"]
        try:
            self._proc = subprocess.Popen(
                cmd, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                text=True)
        except OSError as exc:
            self._proc = None
            raise EngineCrashed("could not start engine %r: %s"
                                % (cmd, exc)) from exc
        try:
            hello = self._read_frame()
            self.protocol = hello.get("protocol")
            if self.protocol != PROTOCOL:
                raise ProtocolError(
                    "engine speaks protocol %r, client requires %d"
                    % (self.protocol, PROTOCOL))
            reply = self._rpc(cmd="make", task=task,
                              overrides=overrides or {})
            self.env_id = reply["env"]
            self.actions = tuple(reply["actions"])
            self.obs_keys = tuple(reply["obs_keys"])
        except Exception:
            self.close()
            raise

    # ------------------------------------------------------------- wire

    def _read_frame(self) -> dict:
        line = self._proc.stdout.readline()
        if not line:
            raise EngineCrashed("engine closed the connection")
        try:
            frame = json.loads(line)
        except ValueError as exc:
            raise ProtocolError("bad frame from engine: %r" % line) from exc
        if not isinstance(frame, dict):
            raise ProtocolError("expected an object frame, got %r" % line)
        return frame

    def _rpc(self, **request) -> dict:
        if self._closed or self._proc.poll() is not None:
            raise EngineCrashed("engine process is gone")
        try:
            self._proc.stdin.write(json.dumps(request) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise EngineCrashed("engine process is gone") from exc
        reply = self._read_frame()
        if not reply.get("ok"):
            self._raise_reply(reply)
        return reply

    @staticmethod
    def _raise_reply(reply: dict):
        code = reply.get("error", "unknown")
        message = reply.get("message", "")
        if code == "bad_action":
            raise IllegalAction(message)
        if code in ("bad_json", "bad_request", "bad_override"):
            raise ProtocolError("%s: %s" % (code, message))
        if code == "unknown_task":
            raise ValueError(message)
        raise RuntimeError("%s: %s" % (code, message))

    # ------------------------------------------------------------ public

    def reset(self, seed: int | None = None) -> dict:
        request = {"cmd": "reset", "env": self.env_id}
        if seed is not None:
            request["seed"] = seed
        reply = self._rpc(**request)
        self._been_reset = True
        self.last_obs = _to_arrays(reply["obs"])
        return self.last_obs

    def step(self, action) -> tuple:
        if not self._been_reset:
            raise RuntimeError("step before reset")
        name = self._action_name(action)
        reply = self._rpc(cmd="step", env=self.env_id, action=name)
        self.last_obs = _to_arrays(reply["obs"])
        return (self.last_obs, reply["reward"], reply["done"],
                reply["info"])

    def _action_name(self, action) -> str:
        if isinstance(action, str):
            if action not in self.actions:
                raise IllegalAction("action %r not in %r"
                                    % (action, self.actions))
            return action
        index = int(action)
        if not 0 <= index < len(self.actions):
            raise IllegalAction("action index %d out of range 0..%d"
                                % (index, len(self.actions) - 1))
        return self.actions[index]

    def render(self) -> str:
        if self.last_obs is None:
            raise RuntimeError("render before reset")
        for key in ("chars", "crop_chars"):
            grid = self.last_obs.get(key)
            if grid is not None:
                return "\n".join(bytes(row).decode("ascii", "replace")
                                 for row in grid)
        raise RuntimeError("no character grid in the observation keys")

    def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        proc = self._proc
        if proc is None:
            return
        try:
            proc.stdin.close()          # ends the engine's request loop
        except OSError:
            pass
        try:
            proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            proc.terminate()
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()

    def __enter__(self) -> "EnvClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass


def make(task: str, overrides: dict | None = None,
         engine_bin: str | None = None) -> EnvClient:
    """Spawn an engine and build one environment for ``task``.

    The engine command comes from ``engine_bin``, the ``ENGINE_BIN``
    environment variable or the ``gridhack`` executable on PATH, in that
    order; the value is split like a shell word list.
    """
    return EnvClient(task, overrides=overrides, engine_bin=engine_bin)
