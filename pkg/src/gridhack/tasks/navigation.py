"""Navigation task family: rooms, corridors, mazes, rivers and hordes.

All levels route through the DSL compiler; procedural tasks supply a
``des(seed)`` callable so layout randomness stays on the same seeded
stream discipline as everything else.
"""

from __future__ import annotations

from ..builder import LevelBuilder
from ..rewards import RewardConfig
from ..rng import Rng, derive_seed, text_salt
from .registry import DIR_ACTIONS, NAV_ACTIONS, EnvSpec, register


def _task_rng(seed: int, tag: str) -> Rng:
    return Rng(derive_seed(seed, text_salt("task:" + tag)))


def _map_origin(w: int, h: int) -> tuple[int, int]:
    # mirrors GEOMETRY: center, center placement on the 79x21 canvas
    return (79 - w) // 2, (21 - h) // 2


def _maze_des(rows: list[str], extra: list[str]) -> str:
    w = max(len(r) for r in rows)
    out = ["MAZE: \"mylevel\", ' '", "GEOMETRY: center, center", "MAP"]
    out.extend(r.ljust(w) for r in rows)
    out.append("ENDMAP")
    out.append(f'REGION: (0,0,{w - 1},{len(rows) - 1}), lit, "ordinary"')
    out.extend(extra)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Room family

def _room_des(size: int, lit: bool, fixed: bool, monsters: int,
              traps: int) -> str:
    b = LevelBuilder.new(size, size, lit=lit)
    if fixed:
        b.set_start_pos((0, 0))
        b.add_goal_pos((size - 1, size - 1))
    else:
        b.add_goal_pos(None)
    for _ in range(monsters):
        b.add_monster()
    for _ in range(traps):
        b.add_trap()
    return b.get_des()


def _register_rooms() -> None:
    for size, steps in ((5, 100), (15, 250)):
        base = f"Room-{size}x{size}"
        count = 1 if size == 5 else 3
        variants = {
            "": dict(lit=True, fixed=True, monsters=0, traps=0),
            "-Random": dict(lit=True, fixed=False, monsters=0, traps=0),
            "-Dark": dict(lit=False, fixed=False, monsters=0, traps=0),
            "-Monster": dict(lit=True, fixed=False, monsters=count, traps=0),
            "-Trap": dict(lit=True, fixed=False, monsters=0, traps=count),
            "-Ultimate": dict(lit=False, fixed=False, monsters=count,
                              traps=count),
        }
        for suffix, kw in variants.items():
            register(EnvSpec(
                base + suffix,
                des=_room_des(size, **kw),
                actions=NAV_ACTIONS,
                max_steps=steps,
                require=("stair down",),
            ))


# ---------------------------------------------------------------------------
# Corridor family (random rooms joined by random corridors)

def _corridor_des(n_rooms: int) -> str:
    out = ['LEVEL: "mylevel"']
    out.append('ROOM: "ordinary", lit, random, random, random {')
    out.append("    STAIR: random, down")
    out.append("}")
    out.append('ROOM: "ordinary", lit, random, random, random {')
    out.append("    BRANCH: (0,0,2,2), (0,0,0,0)")
    out.append("}")
    for _ in range(n_rooms - 2):
        out.append('ROOM: "ordinary", lit, random, random, random {')
        out.append("}")
    out.append("RANDOM_CORRIDORS")
    return "\n".join(out) + "\n"


def _register_corridors() -> None:
    for n, steps in ((2, 200), (3, 400), (5, 800)):
        register(EnvSpec(
            f"Corridor-R{n}",
            des=_corridor_des(n),
            actions=NAV_ACTIONS,
            max_steps=steps,
            require=("stair down",),
        ))


# ---------------------------------------------------------------------------
# KeyRoom family (locked closet, key on the floor)

def _keyroom_des(size: int, lit: bool, fixed: bool) -> str:
    w = size + 4
    h = size + 2
    rows = ["-" * w]
    for _ in range(size):
        rows.append("|" + "." * size + "|" + "." + "|")
    rows.append("-" * w)
    door_y = h // 2
    closet_x = size + 2
    extra = [f"DOOR: locked, ({size + 1},{door_y})"]
    if fixed:
        extra.append(f"BRANCH: (1,1,1,1), (0,0,0,0)")
        extra.append(f"OBJECT: ('(',\"skeleton key\"), "
                     f"({size // 2 + 1},{size // 2 + 1})")
        extra.append(f"STAIR: ({closet_x},{door_y}), down")
    else:
        extra.append(f"BRANCH: (1,1,{size},{size}), (0,0,0,0)")
        extra.append(f"OBJECT: ('(',\"skeleton key\"), "
                     f"rndcoord fillrect(1,1,{size},{size})")
        extra.append(f"STAIR: rndcoord fillrect({closet_x},1,{closet_x},{size}),"
                     f" down")
    lit_word = "lit" if lit else "unlit"
    des = _maze_des(rows, extra)
    return des.replace(', lit, "ordinary"', f', {lit_word}, "ordinary"')


def _register_keyrooms() -> None:
    keyroom_actions = NAV_ACTIONS + ("pickup", "apply") + DIR_ACTIONS
    for name, size, lit, fixed, steps in (
            ("KeyRoom-Fixed-S5", 5, True, True, 200),
            ("KeyRoom-S5", 5, True, False, 200),
            ("KeyRoom-Dark-S5", 5, False, False, 300),
            ("KeyRoom-S15", 15, True, False, 400),
            ("KeyRoom-Dark-S15", 15, False, False, 600)):
        register(EnvSpec(
            name,
            des=_keyroom_des(size, lit, fixed),
            actions=keyroom_actions,
            max_steps=steps,
            require=("stair down",),
        ))


# ---------------------------------------------------------------------------
# MazeWalk family

def _mazewalk_des(mw: int, mh: int) -> str:
    rows = ["-" * (mw + 2)]
    for _ in range(mh):
        rows.append("|" + " " * mw + "|")
    rows.append("-" * (mw + 2))
    extra = [
        "MAZEWALK: (1,1), east",
        "STAIR: random, down",
    ]
    return _maze_des(rows, extra)


def _register_mazewalks() -> None:
    for mw, mh, steps in ((9, 9, 500), (15, 15, 1000), (45, 19, 2000)):
        for mapped in (False, True):
            name = f"MazeWalk-{mw}x{mh}" + ("-Mapped" if mapped else "")
            register(EnvSpec(
                name,
                des=_mazewalk_des(mw, mh),
                actions=NAV_ACTIONS,
                max_steps=steps,
                premapped=mapped,
                require=("stair down",),
            ))


# ---------------------------------------------------------------------------
# River family

def _river_des(narrow: bool, monsters: bool, lava: bool) -> str:
    w, h = 20, 9
    river = "L" if lava else "W"
    cols = (9,) if narrow else (9, 10)
    rows = ["-" * w]
    for y in range(1, h - 1):
        row = ["."] * w
        row[0] = "|"
        row[w - 1] = "|"
        for x in cols:
            row[x] = river
        rows.append("".join(row))
    rows.append("-" * w)
    extra = []
    boulder_cols = (4,) if narrow else (4, 6)
    for x in boulder_cols:
        for y in (2, 4, 6):
            extra.append(f"OBJECT: ('0',\"boulder\"), ({x},{y})")
    extra.append("BRANCH: (1,1,3,7), (0,0,0,0)")
    right = cols[-1] + 1
    extra.append(f"STAIR: rndcoord fillrect({right + 2},1,{w - 2},{h - 2}), down")
    if monsters:
        extra.append(f"MONSTER: random, rndcoord fillrect({right},1,{w - 2},{h - 2}), hostile")
        extra.append(f"MONSTER: random, rndcoord fillrect({right},1,{w - 2},{h - 2}), hostile")
    return _maze_des(rows, extra)


def _register_rivers() -> None:
    specs = (
        ("River-Narrow", True, False, False),
        ("River", False, False, False),
        ("River-Monster", False, True, False),
        ("River-Lava", False, False, True),
        ("River-MonsterLava", False, True, True),
    )
    for name, narrow, monsters, lava in specs:
        actions = NAV_ACTIONS if not lava else NAV_ACTIONS + ("quaff",)
        # only the narrow river is cheap enough for the push-planner to
        # certify; the two-column rivers blow its state budget, though the
        # same bridge-building plan applies one row over two boulders
        register(EnvSpec(
            name,
            des=_river_des(narrow, monsters, lava),
            actions=actions,
            max_steps=400,
            start_inventory=((("levitation", "!"),) if lava else ()),
            require=("stair down",) if narrow else (),
            solvable_pushing=narrow,
        ))


# ---------------------------------------------------------------------------
# HideNSeek family

def _hidenseek_des(w: int, h: int, lava: bool, trees_pct: int = 25,
                   clouds_pct: int = 33) -> str:
    rows = ["-" * (w + 2)]
    for _ in range(h):
        rows.append("|" + "." * w + "|")
    rows.append("-" * (w + 2))
    extra = [
        "$mclass = { 'L','N','H','O','D','T' }",
        "SHUFFLE: $mclass",
        f"REPLACE_TERRAIN: (1,1,{w},{h}), '.', 'C', {clouds_pct}%",
        f"REPLACE_TERRAIN: (1,1,{w},{h}), '.', 'T', {trees_pct}%",
    ]
    if lava:
        extra.append(f"REPLACE_TERRAIN: (1,1,{w},{h}), '.', 'L', 8%")
    extra += [
        f"TERRAIN: randline (1,{h}),({w},1), 5, '.'",
        f"TERRAIN: randline (1,1),({w},{h}), 5, '.'",
        "MONSTER: $mclass[0], random, hostile",
        f"BRANCH: (1,1,3,{h}), (0,0,0,0)",
        f"STAIR: rndcoord fillrect({w - 3},1,{w},{h}), down",
    ]
    return _maze_des(rows, extra)


def _register_hidenseek() -> None:
    for name, w, h, lava, mapped in (
            ("HideNSeek", 12, 9, False, False),
            ("HideNSeek-Mapped", 12, 9, False, True),
            ("HideNSeek-Lava", 12, 9, True, False),
            ("HideNSeek-Big", 24, 14, False, False)):
        register(EnvSpec(
            name,
            des=_hidenseek_des(w, h, lava),
            actions=NAV_ACTIONS,
            max_steps=250,
            premapped=mapped,
        ))


# ---------------------------------------------------------------------------
# CorridorBattle

def _corridorbattle_des(lit: bool) -> str:
    rows = [
        "------            -------",
        "|....|            |.....|",
        "|....|            |.....|",
        "|.....############......|",
        "|....|            |.....|",
        "|....|            |.....|",
        "------            -------",
    ]
    extra = ["BRANCH: (1,1,1,1), (0,0,0,0)",
             "STAIR: (23,5), down"]
    for pos in ((20, 1), (21, 1), (22, 1), (20, 2), (21, 2), (22, 2),
                (20, 4), (21, 4)):
        extra.append(f"MONSTER: ('r',\"giant rat\"), ({pos[0]},{pos[1]}), hostile")
    des = _maze_des(rows, extra)
    if not lit:
        des = des.replace(', lit, "ordinary"', ', unlit, "ordinary"')
    return des


def _register_corridorbattle() -> None:
    reward = (RewardConfig.flat()
              .add_kill_event("giant rat", reward=0.1, repeatable=True,
                              terminal_required=False)
              .add_stair_event("down", terminal_sufficient=True))
    for name, lit in (("CorridorBattle", True), ("CorridorBattle-Dark", False)):
        register(EnvSpec(
            name,
            des=_corridorbattle_des(lit),
            reward=reward,
            actions=NAV_ACTIONS,
            max_steps=400,
            require=("stair down",),
        ))


# ---------------------------------------------------------------------------
# Memento family (cue monster decides the safe fork)

_MEMENTO_CUES = ("x", "F", ":", "d")  # grid bug, lichen, newt, jackal


def _memento_des_fn(length: int, arms: int, tag: str):
    def gen(seed: int) -> str:
        rng = _task_rng(seed, tag)
        correct = rng.randrange(arms)
        cue = _MEMENTO_CUES[correct]
        cy = 4
        fx = length + 1
        h = 9
        if arms == 2:
            w = fx + 1
            arm_rows = (cy - 4, cy + 4)
            grid = [[" "] * w for _ in range(h)]
            for x in range(0, fx + 1):
                grid[cy][x] = "."
            ends = []
            for i, end_y in enumerate(arm_rows):
                step = 1 if end_y > cy else -1
                for y in range(cy + step, end_y + step, step):
                    grid[y][fx] = "."
                ends.append((fx, end_y))
        else:
            w = fx + 5
            spine = range(cy - 3, cy + 4)
            arm_rows = (cy - 3, cy - 1, cy + 1, cy + 3)
            grid = [[" "] * w for _ in range(h)]
            for x in range(0, fx + 1):
                grid[cy][x] = "."
            for y in spine:
                grid[y][fx] = "."
            ends = []
            for end_y in arm_rows:
                for x in range(fx + 1, fx + 4):
                    grid[end_y][x] = "."
                ends.append((fx + 3, end_y))
        rows = ["".join(r) for r in grid]
        extra = [f"MONSTER: '{cue}', (0,{cy}), hostile, asleep",
                 "BRANCH: (3,4,3,4), (0,0,0,0)"]
        for i, (ex, ey) in enumerate(ends):
            if i == correct:
                extra.append(f"STAIR: ({ex},{ey}), down")
            else:
                extra.append(f'TRAP: "invisible", ({ex},{ey})')
        return _maze_des(rows, extra)
    return gen


def _register_memento() -> None:
    reward = (RewardConfig.flat()
              .add_stair_event("down", terminal_sufficient=True)
              .add_event(("TrapTriggered", "invisible"), reward=-1.0,
                         terminal_required=False, terminal_sufficient=True,
                         name="wrong-fork"))
    for name, length, arms, steps in (
            ("Memento-Short-F2", 6, 2, 200),
            ("Memento-F2", 20, 2, 400),
            ("Memento-F4", 20, 4, 400)):
        register(EnvSpec(
            name,
            des=_memento_des_fn(length, arms, name),
            reward=reward,
            actions=NAV_ACTIONS,
            max_steps=steps,
            require=("stair down",),
        ))


# ---------------------------------------------------------------------------
# MazeExplore family

def _mazeexplore_des(mw: int) -> str:
    # maze with the goal stair mid-grid; a small room of apples sits past
    # the far side of the maze, flush against the right wall
    rows = ["-" * (mw + 2)]
    for _ in range(mw):
        rows.append("|" + " " * mw + "|")
    rows.append("-" * (mw + 2))
    mid = (mw // 2) | 1
    extra = [
        "MAZEWALK: (1,1), east",
        f"TERRAIN: fillrect ({mw - 2},{mid - 1},{mw},{mid + 1}), '.'",
        f"STAIR: ({mid},{mid}), down",
        f'OBJECT: "apple", ({mw - 1},{mid - 1})',
        f'OBJECT: "apple", ({mw - 1},{mid + 1})',
        "BRANCH: (1,1,1,1), (0,0,0,0)",
    ]
    return _maze_des(rows, extra)


def _register_mazeexplore() -> None:
    reward = (RewardConfig.flat()
              .add_eat_event("apple", reward=0.5, repeatable=True,
                             terminal_required=False)
              .add_stair_event("down", terminal_sufficient=True))
    for label, mw, steps in (("Easy", 9, 500), ("Hard", 15, 1000)):
        for mapped in (False, True):
            name = f"MazeExplore-{label}" + ("-Mapped" if mapped else "")
            register(EnvSpec(
                name,
                des=_mazeexplore_des(mw),
                reward=reward,
                actions=NAV_ACTIONS + ("eat",),
                max_steps=steps,
                premapped=mapped,
                require=("stair down",),
            ))


_register_rooms()
_register_corridors()
_register_keyrooms()
_register_mazewalks()
_register_rivers()
_register_hidenseek()
_register_corridorbattle()
_register_memento()
_register_mazeexplore()
