"""Terrain kinds and their static properties.

The engine stores terrain as raw byte codes in a flat bytearray, so every
property lookup here is a tuple index instead of an attribute chase.
"""

from __future__ import annotations

from enum import IntEnum


class Terrain(IntEnum):
    SOLID = 0          # undug rock, id 0 on purpose: shares the "nothing" id with unseen cells
    FLOOR = 1
    WALL_H = 2
    WALL_V = 3
    CORRIDOR = 4
    TREE = 5
    WATER = 6
    LAVA = 7
    ICE = 8
    CLOUD = 9
    CLOSED_DOOR = 10
    OPEN_DOOR = 11
    LOCKED_DOOR = 12
    SECRET_DOOR = 13
    STAIR_DOWN = 14
    STAIR_UP = 15
    ALTAR = 16
    FOUNTAIN = 17
    SINK = 18


N_TERRAIN = len(Terrain)

# des-file map characters (also used by TERRAIN/REPLACE_TERRAIN arguments)
DES_CHARS: dict[str, int] = {
    " ": Terrain.SOLID,
    ".": Terrain.FLOOR,
    "-": Terrain.WALL_H,
    "|": Terrain.WALL_V,
    "#": Terrain.CORRIDOR,
    "T": Terrain.TREE,
    "W": Terrain.WATER,
    "L": Terrain.LAVA,
    "I": Terrain.ICE,
    "C": Terrain.CLOUD,
    "+": Terrain.CLOSED_DOOR,
    "S": Terrain.SECRET_DOOR,
    ">": Terrain.STAIR_DOWN,
    "<": Terrain.STAIR_UP,
    "_": Terrain.ALTAR,
    "{": Terrain.FOUNTAIN,
}

CODE_TO_DES_CHAR = {code: ch for ch, code in DES_CHARS.items()}

# Display properties, indexed by terrain code.  A secret door renders exactly
# like a horizontal wall until revealed, and a locked door like a closed one;
# observations must not leak what only searching or kicking can discover.
_PROPS = {
    Terrain.SOLID:       (" ", 0, False, True,  ""),
    Terrain.FLOOR:       (".", 7, True,  False, "floor"),
    Terrain.WALL_H:      ("-", 7, False, True,  "wall"),
    Terrain.WALL_V:      ("|", 7, False, True,  "wall"),
    Terrain.CORRIDOR:    ("#", 7, True,  False, "corridor"),
    Terrain.TREE:        ("T", 2, False, True,  "tree"),
    Terrain.WATER:       ("W", 4, False, False, "water"),
    Terrain.LAVA:        ("L", 1, True,  False, "molten lava"),
    Terrain.ICE:         ("I", 6, True,  False, "ice"),
    Terrain.CLOUD:       ("C", 7, True,  True,  "cloud"),
    Terrain.CLOSED_DOOR: ("+", 3, False, True,  "closed door"),
    Terrain.OPEN_DOOR:   ("-", 3, True,  False, "open door"),
    Terrain.LOCKED_DOOR: ("+", 3, False, True,  "closed door"),
    Terrain.SECRET_DOOR: ("-", 7, False, True,  "wall"),
    Terrain.STAIR_DOWN:  (">", 15, True, False, "staircase down"),
    Terrain.STAIR_UP:    ("<", 15, True, False, "staircase up"),
    Terrain.ALTAR:       ("_", 7, True,  False, "altar"),
    Terrain.FOUNTAIN:    ("{", 4, True,  False, "fountain"),
    Terrain.SINK:        ("#", 7, True,  False, "sink"),
}

DISPLAY_CHAR = tuple(_PROPS[Terrain(i)][0] for i in range(N_TERRAIN))
DISPLAY_COLOR = tuple(_PROPS[Terrain(i)][1] for i in range(N_TERRAIN))
WALKABLE = tuple(_PROPS[Terrain(i)][2] for i in range(N_TERRAIN))
OPAQUE = tuple(_PROPS[Terrain(i)][3] for i in range(N_TERRAIN))
DESCRIPTION = tuple(_PROPS[Terrain(i)][4] for i in range(N_TERRAIN))

DISPLAY_BYTE = tuple(ord(c) for c in DISPLAY_CHAR)

# Cells random placement may target: plain walkable ground, not hazards,
# stairs or features that already mean something.
SPAWNABLE = tuple(
    code in (Terrain.FLOOR, Terrain.CORRIDOR, Terrain.ICE)
    for code in range(N_TERRAIN)
)

# Walkable for a non-levitating agent; lava is enterable but lethal, water
# blocks outright.  Levitation opens both.
DOOR_CODES = frozenset((Terrain.CLOSED_DOOR, Terrain.OPEN_DOOR,
                        Terrain.LOCKED_DOOR, Terrain.SECRET_DOOR))
