"""Declarative reward configuration and per-episode reward tracking.

A :class:`RewardConfig` is a bag of :class:`EventSpec` entries plus a
variant that decides how they combine:

* ``default``  - reach the down staircase, +1, episode over.
* ``flat``     - every spec matches independently.
* ``sequential`` - specs must fire in order; out-of-order events are inert.
* ``grouped``  - sub-configs tracked independently, done under ``all``/``any``.

Matching is structural: an event is a tuple like ``("Ate", "apple")`` and a
matcher is a tuple prefix (``("Ate",)`` matches any eating) or a callable.
A :class:`RewardTracker` holds the per-episode progress and computes the
per-step reward; every step that does not advance the in-game clock costs
``STEP_PENALTY``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

STEP_PENALTY = -0.001

Matcher = "tuple | Callable[[tuple], bool]"


def _matches(matcher, event: tuple) -> bool:
    if callable(matcher):
        return bool(matcher(event))
    if len(matcher) > len(event):
        return False
    return tuple(event[: len(matcher)]) == tuple(matcher)


@dataclass(frozen=True)
class EventSpec:
    """One rewardable event pattern.

    ``terminal_required``: the episode cannot end through the reward rule
    until this spec has matched at least once.  ``terminal_sufficient``: a
    match ends the episode on its own.  Non-repeatable specs pay out only
    on their first match.
    """

    matcher: object
    reward: float = 1.0
    repeatable: bool = False
    terminal_required: bool = True
    terminal_sufficient: bool = False
    name: str = ""


class RewardConfig:
    """Builder-style container for event specs and custom reward hooks."""

    def __init__(self, kind: str = "flat", combine: str = "all"):
        if kind not in ("default", "flat", "sequential", "grouped"):
            raise ValueError(f"unknown reward config kind: {kind}")
        if combine not in ("all", "any"):
            raise ValueError(f"unknown combine rule: {combine}")
        self.kind = kind
        self.combine = combine
        self.specs: list[EventSpec] = []
        self.groups: list[RewardConfig] = []
        self.custom_hooks: list[Callable] = []
        if kind == "default":
            self.add_stair_event("down")

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def default() -> "RewardConfig":
        return RewardConfig("default")

    @staticmethod
    def flat() -> "RewardConfig":
        return RewardConfig("flat")

    @staticmethod
    def sequential() -> "RewardConfig":
        return RewardConfig("sequential")

    @staticmethod
    def grouped(combine: str, groups: Sequence["RewardConfig"]) -> "RewardConfig":
        cfg = RewardConfig("grouped", combine)
        cfg.groups = list(groups)
        return cfg

    # ------------------------------------------------------------------
    # builder methods

    def add_event(self, matcher, reward: float = 1.0, repeatable: bool = False,
                  terminal_required: bool = True,
                  terminal_sufficient: bool = False,
                  name: str = "") -> "RewardConfig":
        self.specs.append(EventSpec(matcher, reward, repeatable,
                                    terminal_required, terminal_sufficient,
                                    name))
        return self

    def add_eat_event(self, item: str, **kw) -> "RewardConfig":
        return self.add_event(("Ate", item), name=f"eat:{item}", **kw)

    def add_wield_event(self, item: str, **kw) -> "RewardConfig":
        return self.add_event(("Wielded", item), name=f"wield:{item}", **kw)

    def add_wear_event(self, item: str, **kw) -> "RewardConfig":
        return self.add_event(("Worn", item), name=f"wear:{item}", **kw)

    def add_kill_event(self, monster: str, **kw) -> "RewardConfig":
        return self.add_event(("Killed", monster), name=f"kill:{monster}", **kw)

    def add_location_event(self, feature: str, **kw) -> "RewardConfig":
        return self.add_event(("ReachedFeature", feature),
                              name=f"loc:{feature}", **kw)

    def add_stair_event(self, direction: str = "down", **kw) -> "RewardConfig":
        return self.add_event(("ReachedStair", direction),
                              name=f"stair:{direction}", **kw)

    def add_coordinate_event(self, coord: tuple, **kw) -> "RewardConfig":
        coord = (int(coord[0]), int(coord[1]))
        return self.add_event(("ReachedCoord", coord),
                              name=f"coord:{coord[0]},{coord[1]}", **kw)

    def add_custom(self, hook: Callable) -> "RewardConfig":
        """``hook(prev_obs, action, obs) -> float | None``, added to reward."""
        self.custom_hooks.append(hook)
        return self


class RewardTracker:
    """Per-episode progress over a :class:`RewardConfig`."""

    def __init__(self, config: RewardConfig):
        self.config = config
        self.sub = [RewardTracker(g) for g in config.groups]
        self.reset()

    def reset(self) -> None:
        self.satisfied = [False] * len(self.config.specs)
        self.seq_pos = 0
        self.rule_done = False
        for tracker in self.sub:
            tracker.reset()

    # ------------------------------------------------------------------

    def _consume(self, events: Sequence[tuple]) -> float:
        cfg = self.config
        total = 0.0
        if cfg.kind == "grouped":
            for tracker in self.sub:
                total += tracker._consume(events)
            dones = [t._terminal() for t in self.sub]
            if dones:
                self.rule_done = all(dones) if cfg.combine == "all" else any(dones)
            return total
        if cfg.kind == "sequential":
            for event in events:
                if self.seq_pos < len(cfg.specs) and _matches(
                        cfg.specs[self.seq_pos].matcher, event):
                    spec = cfg.specs[self.seq_pos]
                    total += spec.reward
                    self.satisfied[self.seq_pos] = True
                    self.seq_pos += 1
                    if spec.terminal_sufficient:
                        self.rule_done = True
            if self.seq_pos >= len(cfg.specs) and cfg.specs:
                self.rule_done = True
            return total
        # default / flat
        for event in events:
            for i, spec in enumerate(cfg.specs):
                if not _matches(spec.matcher, event):
                    continue
                if self.satisfied[i] and not spec.repeatable:
                    continue
                total += spec.reward
                self.satisfied[i] = True
                if spec.terminal_sufficient:
                    self.rule_done = True
        if cfg.specs and all(
                self.satisfied[i] or not spec.terminal_required
                for i, spec in enumerate(cfg.specs)) and any(
                spec.terminal_required for spec in cfg.specs):
            self.rule_done = True
        return total

    def _terminal(self) -> bool:
        return self.rule_done

    def evaluate(self, events: Sequence[tuple], time_advanced: bool,
                 died: bool, step_count: int, max_steps: int) -> tuple[float, bool]:
        reward = self._consume(tuple(events))
        if not time_advanced:
            reward += STEP_PENALTY
        done = self.rule_done or died or step_count >= max_steps
        return reward, done


def evaluate(config: RewardConfig, events: Sequence[tuple],
             time_advanced: bool, died: bool, step_count: int,
             max_steps: int) -> tuple[float, bool]:
    """One-shot evaluation with a fresh tracker (stateless helper)."""
    return RewardTracker(config).evaluate(events, time_advanced, died,
                                          step_count, max_steps)
