"""Box-pushing puzzle corpus: loader and task registrations.

Corpus format: levels are introduced by a ``; <index>`` header line followed
by ten rows of ten characters: ``#`` wall, `` `` floor, ``.`` goal, ``$``
box, ``@`` player.  ``*`` (box on goal) and ``+`` (player on goal) are also
accepted.  Boxes become boulders, goals become fountains; an episode is won
when every boulder rests on a fountain.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..blueprint import CANVAS_HEIGHT, CANVAS_WIDTH, LevelBlueprint, Placement
from ..errors import MalformedLevel
from ..rewards import RewardConfig
from ..terrain import Terrain
from .registry import CARDINAL_ACTIONS, EnvSpec, register

LEVEL_SIZE = 10
_CHARS = frozenset("# .$@*+")


def _parse_level(index: int, rows: list, header_index: int) -> LevelBlueprint:
    if len(rows) != LEVEL_SIZE:
        raise MalformedLevel(header_index, "expected %d rows, got %d"
                             % (LEVEL_SIZE, len(rows)))
    ox = (CANVAS_WIDTH - LEVEL_SIZE) // 2
    oy = (CANVAS_HEIGHT - LEVEL_SIZE) // 2
    bp = LevelBlueprint(name="boxoban:%d" % header_index)
    player = None
    boxes = goals = 0
    for y, row in enumerate(rows):
        if len(row) > LEVEL_SIZE:
            raise MalformedLevel(header_index,
                                 "row %d longer than %d" % (y, LEVEL_SIZE))
        row = row.ljust(LEVEL_SIZE)
        for x, ch in enumerate(row):
            if ch not in _CHARS:
                raise MalformedLevel(header_index,
                                     "bad character %r at (%d,%d)" % (ch, x, y))
            cx, cy = ox + x, oy + y
            code = Terrain.FLOOR
            if ch == "#":
                code = Terrain.WALL_H
            elif ch in ".*+":
                code = Terrain.FOUNTAIN
                goals += 1
            bp.set_terrain(cx, cy, code)
            bp.lit[cy * CANVAS_WIDTH + cx] = 1
            if ch in "$*":
                boxes += 1
                bp.placements.append(
                    Placement("object", "boulder", "0", cx, cy))
            elif ch in "@+":
                if player is not None:
                    raise MalformedLevel(header_index, "more than one player")
                player = (cx, cy)
    if player is None:
        raise MalformedLevel(header_index, "no player")
    if boxes == 0:
        raise MalformedLevel(header_index, "no boxes")
    if boxes != goals:
        raise MalformedLevel(header_index, "%d boxes but %d goals"
                             % (boxes, goals))
    bp.start_pos = player
    return bp


def load_boxoban(text: str) -> list:
    """Parse a corpus file into one LevelBlueprint per level."""
    levels = []
    header = None
    rows: list = []
    for line in text.splitlines():
        if line.startswith(";"):
            if header is not None:
                levels.append(_parse_level(len(levels), rows, header))
            try:
                header = int(line[1:].strip())
            except ValueError:
                raise MalformedLevel(len(levels), "bad header %r" % line)
            rows = []
        elif line.strip():
            if header is None:
                raise MalformedLevel(0, "level rows before any header")
            rows.append(line.rstrip("\n"))
    if header is not None:
        levels.append(_parse_level(len(levels), rows, header))
    return levels


@lru_cache(maxsize=None)
def _corpus(name: str) -> tuple:
    text = (resources.files("gridhack.data") / "boxoban" /
            (name + ".txt")).read_text()
    return tuple(load_boxoban(text))


def _register_boxoban() -> None:
    reward = RewardConfig.flat().add_event(
        ("AllBouldersOnFountains",), terminal_sufficient=True,
        name="boxes_on_goals")

    def pick(corpus_name):
        def fn(seed: int) -> LevelBlueprint:
            levels = _corpus(corpus_name)
            return levels[seed % len(levels)]
        return fn

    for split in ("Unfiltered", "Medium", "Hard"):
        register(EnvSpec(
            "Boxoban-" + split,
            blueprint_fn=pick(split.lower()),
            reward=reward,
            actions=CARDINAL_ACTIONS,
            max_steps=200))


_register_boxoban()
