"""Command-line front end: compile, sample, play, rollout, check, serve."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import traceback

import numpy as np

from . import engine
from .blueprint import LevelBlueprint, validate_blueprint
from .compiler import compile_document
from .errors import GridhackError, UnknownTaskError
from .observe import OBS_KEYS, render_text
from .rng import Rng, derive_seed, text_salt
from .runtime import EnvSession
from .tasks import list_tasks, make_task
from .terrain import Terrain


class _Parser(argparse.ArgumentParser):
    # bad flags are a user error, not an internal one
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def serialize_obs(obs: dict) -> dict:
    """JSON-ready form: grids as nested int lists, message as a string."""
    out = {}
    for key, value in obs.items():
        if key == "message":
            raw = bytes(bytearray(value))
            out[key] = raw.split(b"\0")[0].decode("utf-8", "replace")
        elif isinstance(value, np.ndarray):
            out[key] = value.tolist()
        else:
            out[key] = value
    return out


def obs_digest(obs: dict) -> str:
    return hashlib.md5(_canonical_json(serialize_obs(obs)).encode()).hexdigest()


def _is_des_path(target: str) -> bool:
    return target.endswith(".des") or "/" in target


def _load_des(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise GridhackError(f"cannot read {path}: {exc}")


# ---------------------------------------------------------------------------
# compile

def _content_bounds(bp: LevelBlueprint):
    xs, ys = [], []
    for y in range(bp.height):
        for x in range(bp.width):
            if bp.terrain_at(x, y) != Terrain.SOLID:
                xs.append(x)
                ys.append(y)
    if not xs:
        return None
    return min(xs), min(ys), max(xs), max(ys)


def _print_summary(bp: LevelBlueprint) -> None:
    print(f"level: {bp.name}")
    bounds = _content_bounds(bp)
    if bounds:
        x0, y0, x1, y1 = bounds
        print(f"size: {bp.width}x{bp.height} "
              f"(content {x1 - x0 + 1}x{y1 - y0 + 1} at ({x0},{y0}))")
    counts = {"monster": [], "object": [], "trap": []}
    for pl in bp.placements:
        counts.setdefault(pl.kind, []).append(pl.name)
    for kind, plural in (("monster", "monsters"), ("object", "objects"),
                         ("trap", "traps")):
        names = counts.get(kind, [])
        detail = ""
        if names:
            uniq = sorted(set(names))
            detail = " (" + ", ".join(uniq[:8]) + (", ..." if len(uniq) > 8 else "") + ")"
        print(f"{plural}: {len(names)}{detail}")
    stairs = ", ".join(f"{d} at ({x},{y})" for x, y, d in bp.stairs) or "none"
    print(f"stairs: {stairs}")
    start = f"({bp.start_pos[0]},{bp.start_pos[1]})" if bp.start_pos else "random"
    print(f"start: {start}")
    if bp.premapped:
        print("premapped: yes")


def _cmd_compile(args) -> int:
    source = _load_des(args.file)
    bp = compile_document(source, seed=args.seed)
    if not args.quiet:
        _print_summary(bp)
    return 0


# ---------------------------------------------------------------------------
# sample

def _session_for(target: str, seed: int):
    """An (EnvSession-like, obs_keys) pair for a task id or a des file."""
    if _is_des_path(target):
        bp = compile_document(_load_des(target), seed=seed)
        state = engine.reset(bp, seed, auto_menus=True)
        return state, OBS_KEYS
    sess = EnvSession(make_task(target))
    sess.reset(seed)
    return sess.state, sess.spec.obs_keys


def _cmd_sample(args) -> int:
    from .observe import observe

    for i in range(args.count):
        seed = args.seed + i
        state, obs_keys = _session_for(args.target, seed)
        if args.render == "ansi":
            if not args.quiet:
                print(f"--- seed {seed} ---")
            print(render_text(state, color=sys.stdout.isatty()))
        else:
            obs = observe(state, obs_keys)
            print(_canonical_json({"seed": seed, "obs": serialize_obs(obs)}))
    return 0


# ---------------------------------------------------------------------------
# play

_PLAY_KEYS = {
    "k": "N", "j": "S", "l": "E", "h": "W",
    "u": "NE", "y": "NW", "n": "SE", "b": "SW",
    "s": "search", ",": "pickup", "o": "open", "q": None,
}


def _cmd_play(args) -> int:
    if _is_des_path(args.target):
        des = _load_des(args.target)
        from .tasks.registry import EnvSpec
        spec = EnvSpec("adhoc", des=des, actions=tuple(engine.all_action_names()),
                       auto_menus=False)
    else:
        spec = make_task(args.target)
    sess = EnvSession(spec)
    sess.reset(args.seed)
    total = 0.0
    print(render_text(sess.state, color=sys.stdout.isatty()))
    print("move: hjkl yubn | q quits | other actions by name "
          f"({', '.join(a for a in spec.actions if not a[0].isupper())[:200]})")
    while True:
        try:
            raw = input("> ").strip()
        except EOFError:
            return 0
        if raw in ("q", "quit", "exit"):
            return 0
        action = _PLAY_KEYS.get(raw, raw)
        if action is None:
            return 0
        if action not in spec.actions:
            print(f"unknown action {raw!r}")
            continue
        obs, reward, done, info = sess.step(action)
        total += reward
        print(render_text(sess.state, color=sys.stdout.isatty()))
        if reward:
            print(f"reward: {reward:+g} (total {total:+g})")
        if done:
            print(f"episode over: {info['end_status']} "
                  f"(return {total:+g}, {info['step_count']} steps)")
            return 0


# ---------------------------------------------------------------------------
# rollout

_OBS_PRESETS = {
    "crop": ("crop_chars", "crop_colors", "crop_ids"),
    "full": OBS_KEYS,
}


def _cmd_rollout(args) -> int:
    spec = make_task(args.target)
    if args.obs != "default":
        spec = spec.replace(obs_keys=_OBS_PRESETS[args.obs])
    sess = EnvSession(spec)
    episodes = []
    t0 = time.perf_counter()
    total_steps = 0
    for ep in range(args.episodes):
        seed = args.seed + ep
        sess.reset(seed)
        policy = Rng(derive_seed(seed, text_salt("policy:random")))
        ep_return = 0.0
        steps = []
        done = False
        status = "timeout"
        while not done:
            idx = policy.randrange(len(spec.actions))
            obs, reward, done, info = sess.step(idx)
            ep_return += reward
            total_steps += 1
            if args.json:
                steps.append({"action": spec.actions[idx],
                              "reward": round(reward, 9),
                              "done": done,
                              "obs_md5": obs_digest(obs)})
            if done:
                status = info["end_status"]
        episodes.append({"seed": seed, "return": round(ep_return, 9),
                         "steps": sess.step_count, "end_status": status,
                         "trace": steps})
        if not args.json and not args.quiet:
            print(f"episode {ep}: return={ep_return:.3f} "
                  f"steps={sess.step_count} end={status}")
    elapsed = time.perf_counter() - t0
    sps = total_steps / elapsed if elapsed > 0 else 0.0
    if args.json:
        out = {"task": args.target, "seed": args.seed,
               "episodes": [
                   {"seed": e["seed"], "return": e["return"],
                    "steps": e["steps"], "end_status": e["end_status"],
                    "trace": e["trace"]} for e in episodes]}
        print(_canonical_json(out))
    elif not args.quiet:
        print(f"steps/sec: {sps:.0f}")
    return 0


# ---------------------------------------------------------------------------
# check

def _cmd_check(args) -> int:
    is_file = _is_des_path(args.target)
    if is_file:
        source = _load_des(args.target)
        compiled = solvable = 0
        first_issue = ""
        for i in range(args.seeds):
            seed = args.seed + i
            try:
                bp = compile_document(source, seed=seed)
                compiled += 1
            except GridhackError as exc:
                if not first_issue:
                    first_issue = str(exc)
                continue
            reqs = ["stair down"] if bp.find_stair("down") else []
            issues = validate_blueprint(bp, reqs)
            if issues:
                if not first_issue:
                    first_issue = issues[0]
            else:
                solvable += 1
        print(f"target: {args.target}")
        print(f"compiled: {compiled}/{args.seeds}")
        print(f"solvable: {solvable}/{args.seeds}")
        if first_issue and not args.quiet:
            print(f"first issue: {first_issue}")
        return 0

    spec = make_task(args.target)
    ok = 0
    first_issue = ""
    for i in range(args.seeds):
        seed = args.seed + i
        try:
            spec.build(seed)
            ok += 1
        except GridhackError as exc:
            if not first_issue:
                first_issue = str(exc)
    print(f"task: {args.target}")
    if spec.require:
        print(f"requirements: {', '.join(str(r) for r in spec.require)}"
              + (" (with pushing)" if spec.solvable_pushing else ""))
        print(f"solvable: {ok}/{args.seeds}")
    else:
        print(f"solvable: {ok}/{args.seeds} (reset only; no reachability "
              f"requirements declared)")
    if first_issue and not args.quiet:
        print(f"first issue: {first_issue}")
    return 0


# ---------------------------------------------------------------------------
# serve

_OVERRIDE_KEYS = ("des", "max_steps", "crop_size", "obs_keys", "actions",
                  "auto_menus")


def _serve_error(code: str, message: str) -> str:
    return _canonical_json({"ok": False, "error": code, "message": message})


def _cmd_serve(args) -> int:
    out = sys.stdout
    out.write(_canonical_json({"protocol": 1}) + "\n")
    out.flush()
    sessions = {}
    next_handle = 1
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            req = json.loads(line)
        except ValueError:
            out.write(_serve_error("bad_json", "request is not valid JSON") + "\n")
            out.flush()
            continue
        try:
            reply = _serve_dispatch(req, sessions)
            if reply.get("__new_session__"):
                spec = reply.pop("__new_session__")
                handle = next_handle
                next_handle += 1
                sessions[handle] = EnvSession(spec)
                reply["env"] = handle
            out.write(_canonical_json(reply) + "\n")
        except GridhackError as exc:
            code = "unknown_task" if isinstance(exc, UnknownTaskError) else "engine"
            out.write(_serve_error(code, str(exc)) + "\n")
        except Exception as exc:  # pragma: no cover - defensive
            out.write(_serve_error("internal",
                                   f"{type(exc).__name__}: {exc}") + "\n")
        out.flush()
    return 0


def _serve_dispatch(req: dict, sessions: dict) -> dict:
    if not isinstance(req, dict) or "cmd" not in req:
        return {"ok": False, "error": "bad_request", "message": "missing cmd"}
    cmd = req["cmd"]
    if cmd == "make":
        task = req.get("task")
        if not isinstance(task, str):
            return {"ok": False, "error": "bad_request",
                    "message": "make requires a task id string"}
        overrides = req.get("overrides") or {}
        if not isinstance(overrides, dict):
            return {"ok": False, "error": "bad_request",
                    "message": "overrides must be an object"}
        unknown = [k for k in overrides if k not in _OVERRIDE_KEYS]
        if unknown:
            return {"ok": False, "error": "bad_override",
                    "message": f"unsupported override keys: {', '.join(sorted(unknown))}"}
        kw = dict(overrides)
        for key in ("obs_keys", "actions"):
            if key in kw:
                kw[key] = tuple(kw[key])
        spec = make_task(task, **kw)
        return {"ok": True, "__new_session__": spec,
                "actions": list(spec.actions),
                "obs_keys": list(spec.obs_keys)}
    if cmd in ("reset", "step", "close"):
        handle = req.get("env")
        sess = sessions.get(handle)
        if sess is None:
            return {"ok": False, "error": "bad_env",
                    "message": f"no environment with handle {handle!r}"}
        if cmd == "close":
            del sessions[handle]
            return {"ok": True}
        if cmd == "reset":
            seed = req.get("seed", 0)
            if not isinstance(seed, int):
                return {"ok": False, "error": "bad_request",
                        "message": "seed must be an integer"}
            obs = sess.reset(seed)
            return {"ok": True, "obs": serialize_obs(obs)}
        action = req.get("action")
        if not isinstance(action, (str, int)):
            return {"ok": False, "error": "bad_action",
                    "message": "action must be a name or an index"}
        if sess.state is None:
            return {"ok": False, "error": "not_reset",
                    "message": "step before reset"}
        if sess.done:
            return {"ok": False, "error": "episode_done",
                    "message": "episode is done; reset first"}
        try:
            obs, reward, done, info = sess.step(action)
        except GridhackError as exc:
            return {"ok": False, "error": "bad_action", "message": str(exc)}
        return {"ok": True, "obs": serialize_obs(obs), "reward": reward,
                "done": done,
                "info": {"events": [list(e) for e in info["events"]],
                         "time_advanced": info["time_advanced"],
                         "step_count": info["step_count"],
                         "end_status": info["end_status"]}}
    return {"ok": False, "error": "unknown_cmd",
            "message": f"unknown cmd {cmd!r}"}


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="gridhack",
                     description="des-file gridworld sandbox")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed for seeded subcommands")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress informational output")
    # the same flags are accepted after the subcommand; SUPPRESS keeps a
    # pre-subcommand value from being clobbered by a subparser default
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true",
                        default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("compile", parents=[common],
                       help="compile a des file and summarize it")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_compile)

    p = sub.add_parser("sample", parents=[common], help="render seeded instances of a level")
    p.add_argument("target", help="task id or .des file")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--render", choices=("ansi", "json"), default="ansi")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("play", parents=[common], help="drive a task interactively")
    p.add_argument("target", help="task id or .des file")
    p.set_defaults(fn=_cmd_play)

    p = sub.add_parser("rollout", parents=[common], help="run a random policy")
    p.add_argument("target", help="task id")
    p.add_argument("--episodes", type=int, default=1)
    p.add_argument("--policy", choices=("random",), default="random")
    p.add_argument("--obs", choices=("default", "crop", "full"),
                   default="default", help="observation key preset")
    p.add_argument("--json", action="store_true",
                   help="machine-readable trace with observation digests")
    p.set_defaults(fn=_cmd_rollout)

    p = sub.add_parser("check", parents=[common], help="compile/solvability report over seeds")
    p.add_argument("target", help="task id or .des file")
    p.add_argument("--seeds", type=int, default=20)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("tasks", parents=[common], help="list registered task ids")
    p.set_defaults(fn=lambda args: (print("\n".join(list_tasks())), 0)[1])

    p = sub.add_parser("serve", parents=[common], help="newline-delimited JSON protocol on stdio")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        return args.fn(args)
    except GridhackError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BrokenPipeError:
        return 0
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
