"""Symbolic observations extracted from a live world state.

Everything is numpy so downstream consumers can batch and serialize without
conversions: the full display grids are 21x79 uint8, the crop is a square
window centered on the agent, and fixed-size byte buffers carry the message
and inventory so observation shapes never depend on world contents.
"""

from __future__ import annotations

import numpy as np

from .engine.world import WorldState, describe_object
from .terrain import DESCRIPTION

HEIGHT = 21
WIDTH = 79
STATS_SIZE = 25
MESSAGE_SIZE = 256
INV_SIZE = 55
INV_STRLEN = 80
DEFAULT_CROP = 9

OBS_KEYS = (
    "chars", "colors", "ids",
    "crop_chars", "crop_colors", "crop_ids",
    "stats", "message", "inv_letters", "inv_strs",
    "screen_descriptions",
)


def _crop(grid: np.ndarray, ax: int, ay: int, n: int, fill: int) -> np.ndarray:
    half = n // 2
    y0 = ay - half
    x0 = ax - half
    if 0 <= y0 and 0 <= x0 and y0 + n <= HEIGHT and x0 + n <= WIDTH:
        return grid[y0:y0 + n, x0:x0 + n].copy()
    out = np.full((n, n), fill, dtype=np.uint8)
    sy0 = max(0, y0)
    sx0 = max(0, x0)
    sy1 = min(HEIGHT, y0 + n)
    sx1 = min(WIDTH, x0 + n)
    if sy0 < sy1 and sx0 < sx1:
        out[sy0 - y0:sy1 - y0, sx0 - x0:sx1 - x0] = grid[sy0:sy1, sx0:sx1]
    return out


def stats_vector(state: WorldState) -> np.ndarray:
    out = np.zeros(STATS_SIZE, dtype=np.int64)
    out[0] = state.ax
    out[1] = state.ay
    out[2] = state.hp
    out[3] = state.hp_max
    out[4] = state.clock
    out[5] = 1 if state.levitating() else 0
    out[6] = len(state.inventory)
    return out


def message_buffer(state: WorldState) -> np.ndarray:
    out = np.zeros(MESSAGE_SIZE, dtype=np.uint8)
    data = state.message.encode("ascii", "replace")[:MESSAGE_SIZE - 1]
    out[:len(data)] = np.frombuffer(data, dtype=np.uint8)
    return out


def inventory_buffers(state: WorldState) -> tuple[np.ndarray, np.ndarray]:
    letters = np.zeros(INV_SIZE, dtype=np.uint8)
    strs = np.zeros((INV_SIZE, INV_STRLEN), dtype=np.uint8)
    for i, (letter, obj) in enumerate(state.inventory.items()):
        if i >= INV_SIZE:
            break
        letters[i] = ord(letter)
        desc = describe_object(obj)
        if obj.quantity > 1:
            desc = f"{obj.quantity} {obj.name}s"
        if letter == state.wielded:
            desc += " (weapon in hand)"
        elif letter in state.worn:
            desc += " (being worn)"
        data = desc.encode("ascii", "replace")[:INV_STRLEN - 1]
        strs[i, :len(data)] = np.frombuffer(data, dtype=np.uint8)
    return letters, strs


def describe_cell(state: WorldState, x: int, y: int) -> str:
    """Human-readable content of one cell, "" if never seen."""
    idx = y * WIDTH + x
    if not state.remembered[idx]:
        return ""
    if idx in state.visible:
        if x == state.ax and y == state.ay:
            return "agent"
        mon = state.monster_at.get(idx)
        if mon is not None:
            return mon.name
        if idx in state.boulders:
            return "a boulder"
        objs = state.objects_at.get(idx)
        if objs:
            return describe_object(objs[-1])
        trap = state.traps.get(idx)
        if trap is not None and trap != "invisible":
            return f"a {trap} trap"
    return DESCRIPTION[state.terrain[idx]]


def screen_descriptions(state: WorldState) -> list[list[str]]:
    return [[describe_cell(state, x, y) for x in range(WIDTH)]
            for y in range(HEIGHT)]


def observe(state: WorldState, keys=OBS_KEYS, crop_size: int = DEFAULT_CROP) -> dict:
    """Build the observation dict for the requested keys."""
    obs: dict[str, object] = {}
    inv = None
    for key in keys:
        if key == "chars":
            obs[key] = state.chars.copy()
        elif key == "colors":
            obs[key] = state.colors.copy()
        elif key == "ids":
            obs[key] = state.entity_ids.copy()
        elif key == "crop_chars":
            obs[key] = _crop(state.chars, state.ax, state.ay, crop_size, 32)
        elif key == "crop_colors":
            obs[key] = _crop(state.colors, state.ax, state.ay, crop_size, 0)
        elif key == "crop_ids":
            obs[key] = _crop(state.entity_ids, state.ax, state.ay, crop_size, 0)
        elif key == "stats":
            obs[key] = stats_vector(state)
        elif key == "message":
            obs[key] = message_buffer(state)
        elif key == "inv_letters":
            if inv is None:
                inv = inventory_buffers(state)
            obs[key] = inv[0]
        elif key == "inv_strs":
            if inv is None:
                inv = inventory_buffers(state)
            obs[key] = inv[1]
        elif key == "screen_descriptions":
            obs[key] = screen_descriptions(state)
        else:
            raise KeyError(f"unknown observation key: {key}")
    return obs


_ANSI_RESET = "\x1b[0m"


def _ansi_color(color: int) -> str:
    if color == 0:
        return ""
    base = 30 + (color % 8)
    bold = ";1" if color >= 8 else ""
    return f"\x1b[{base}{bold}m"


def render_text(state: WorldState, color: bool = False) -> str:
    """Render the current display grid as text, optionally ANSI-colored."""
    lines = []
    for y in range(HEIGHT):
        if not color:
            lines.append(bytes(state.chars[y]).decode("ascii").rstrip())
            continue
        parts = []
        last = None
        for x in range(WIDTH):
            ch = chr(state.chars[y, x])
            col = int(state.colors[y, x])
            if col != last:
                parts.append(_ANSI_RESET)
                parts.append(_ansi_color(col))
                last = col
            parts.append(ch)
        parts.append(_ANSI_RESET)
        lines.append("".join(parts).rstrip())
    return "\n".join(lines)
