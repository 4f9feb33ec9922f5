"""Episode runtime: glues a task spec, the engine and the reward tracker.

``EnvSession`` is the in-process environment handle the CLI protocol and
any embedding code drive: ``reset`` compiles and populates a level for a
seed, ``step`` advances the world one action and returns
``(obs, reward, done, info)``.
"""

from __future__ import annotations

from . import engine
from .errors import EngineError
from .observe import observe
from .rewards import RewardTracker
from .tasks.registry import EnvSpec, make_task


class EnvSession:
    """One live environment instance over an :class:`EnvSpec`."""

    def __init__(self, spec: EnvSpec | str, seed: int = 0):
        if isinstance(spec, str):
            spec = make_task(spec)
        self.spec = spec
        self.seed = seed
        self.actions = spec.actions
        self.tracker = RewardTracker(spec.reward)
        self._hooks = tuple(spec.reward.custom_hooks)
        self.state = None
        self.step_count = 0
        self.done = True
        self._prev_obs = None

    # ------------------------------------------------------------------

    def _observe(self) -> dict:
        return observe(self.state, self.spec.obs_keys, self.spec.crop_size)

    def reset(self, seed: int | None = None) -> dict:
        if seed is not None:
            self.seed = seed
        bp = self.spec.build(self.seed)
        self.state = engine.reset(bp, self.seed,
                                  auto_menus=self.spec.auto_menus,
                                  start_inventory=self.spec.start_inventory)
        self.tracker.reset()
        self.step_count = 0
        self.done = False
        obs = self._observe()
        self._prev_obs = obs
        return obs

    def action_name(self, action) -> str:
        if isinstance(action, str):
            if action not in self.actions:
                raise EngineError(f"action {action!r} not in this task's "
                                  f"action set")
            return action
        index = int(action)
        if not 0 <= index < len(self.actions):
            raise EngineError(f"action index {index} out of range "
                              f"0..{len(self.actions) - 1}")
        return self.actions[index]

    def step(self, action) -> tuple[dict, float, bool, dict]:
        if self.state is None:
            raise EngineError("step before reset")
        if self.done:
            raise EngineError("episode is done; call reset")
        name = self.action_name(action)
        events, time_advanced = self.state.step(name)
        self.step_count += 1
        died = bool(self.state.death_cause)
        reward, done = self.tracker.evaluate(
            events, time_advanced, died, self.step_count, self.spec.max_steps)
        done = done or self.state.episode_done
        obs = self._observe()
        for hook in self._hooks:
            extra = hook(self._prev_obs, name, obs)
            if extra:
                reward += float(extra)
        self._prev_obs = obs
        self.done = done
        info = {
            "events": events,
            "time_advanced": time_advanced,
            "step_count": self.step_count,
            "end_status": self._end_status(died) if done else "",
        }
        return obs, reward, done, info

    def _end_status(self, died: bool) -> str:
        if died:
            return "death"
        if self.tracker.rule_done:
            return "success"
        if self.state.episode_done:
            return "aborted"
        return "timeout"
