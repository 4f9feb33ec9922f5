"""Skill task family: item interaction, doors, lava crossing, wand play.

These tasks run with menus and confirmations exposed (``auto_menus=False``)
and the full action vocabulary, so the agent itself must answer prompts.
"""

from __future__ import annotations

from ..builder import LevelBuilder
from ..engine import all_action_names
from ..rewards import RewardConfig
from ..rng import Rng, derive_seed, text_salt
from .registry import EnvSpec, register

SKILL_ACTIONS = tuple(all_action_names())

_DISTRACTORS = ("dagger", "robe", "sack", "adornment", "water")


def _task_rng(seed: int, tag: str) -> Rng:
    return Rng(derive_seed(seed, text_salt("task:" + tag)))


# ---------------------------------------------------------------------------
# Eat / Pray / Wear

def _simple_room(size: int = 5, fixed: bool = False) -> LevelBuilder:
    b = LevelBuilder.new(size, size)
    if fixed:
        b.set_start_pos((0, 0))
    return b


def _register_use_tasks() -> None:
    # Eat: apple in inventory; Fixed: apple on the floor of a fixed room;
    # Distract: junk inventory letters around the apple.
    eat_reward = RewardConfig.flat().add_eat_event(
        "apple", terminal_sufficient=True)
    register(EnvSpec(
        "Eat", des=_simple_room().get_des(), reward=eat_reward,
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=100,
        start_inventory=("apple",)))
    register(EnvSpec(
        "Eat-Fixed",
        des=_simple_room(fixed=True).add_object("apple", "%", (2, 2)).get_des(),
        reward=eat_reward, actions=SKILL_ACTIONS, auto_menus=False,
        max_steps=100))
    register(EnvSpec(
        "Eat-Distract", des=_simple_room().get_des(), reward=eat_reward,
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=150,
        start_inventory=_DISTRACTORS[:2] + ("apple",) + _DISTRACTORS[2:]))

    pray_reward = RewardConfig.flat().add_event(
        ("Prayed",), terminal_sufficient=True, name="prayed")
    register(EnvSpec(
        "Pray", des=_simple_room().add_altar().get_des(), reward=pray_reward,
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=150,
        require=("altar",)))
    register(EnvSpec(
        "Pray-Fixed",
        des=_simple_room(fixed=True).add_altar((2, 2)).get_des(),
        reward=pray_reward, actions=SKILL_ACTIONS, auto_menus=False,
        max_steps=150, require=("altar",)))
    register(EnvSpec(
        "Pray-Distract",
        des=(_simple_room(size=7).add_altar().add_object().add_object()
             .add_monster(args=("peaceful",)).get_des()),
        reward=pray_reward, actions=SKILL_ACTIONS, auto_menus=False,
        max_steps=200, require=("altar",)))

    wear_reward = RewardConfig.flat().add_wear_event(
        "robe", terminal_sufficient=True)
    register(EnvSpec(
        "Wear", des=_simple_room().get_des(), reward=wear_reward,
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=100,
        start_inventory=("robe",)))
    register(EnvSpec(
        "Wear-Fixed",
        des=_simple_room(fixed=True).add_object("robe", "[", (2, 2)).get_des(),
        reward=wear_reward, actions=SKILL_ACTIONS, auto_menus=False,
        max_steps=150))
    register(EnvSpec(
        "Wear-Distract", des=_simple_room().get_des(), reward=wear_reward,
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=150,
        start_inventory=("leather armor", "low boots", "robe", "ring mail")))


# ---------------------------------------------------------------------------
# LockedDoor

def _lockeddoor_des(door_y: int) -> str:
    rows = ["---------",
            "|...|...|",
            "|...|...|",
            "|...|...|",
            "|...|...|",
            "|...|...|",
            "---------"]
    extra = [f"DOOR: locked, (4,{door_y})",
             "BRANCH: (1,1,3,5), (0,0,0,0)",
             "STAIR: rndcoord fillrect(5,1,7,5), down"]
    w = max(len(r) for r in rows)
    out = ["MAZE: \"mylevel\", ' '", "GEOMETRY: center, center", "MAP"]
    out.extend(rows)
    out.append("ENDMAP")
    out.append(f'REGION: (0,0,{w - 1},{len(rows) - 1}), lit, "ordinary"')
    out.extend(extra)
    return "\n".join(out) + "\n"


def _register_lockeddoor() -> None:
    register(EnvSpec(
        "LockedDoor", des=_lockeddoor_des(3), actions=SKILL_ACTIONS,
        auto_menus=False, max_steps=200, require=("stair down",)))

    def gen(seed: int) -> str:
        rng = _task_rng(seed, "LockedDoor-Random")
        return _lockeddoor_des(rng.randint(1, 5))

    register(EnvSpec(
        "LockedDoor-Random", des=gen, actions=SKILL_ACTIONS,
        auto_menus=False, max_steps=200, require=("stair down",)))


# ---------------------------------------------------------------------------
# LavaCross

def _lavacross_des(item: str | None, char: str | None, on_floor: bool) -> str:
    b = LevelBuilder.new(11, 7)
    b.fill_terrain("fillrect", "L", 5, 0, 6, 6)
    b.set_start_rect((0, 0), (3, 6))
    b.add_goal_pos((9, 3))
    if item is not None and on_floor:
        b.add_object(item, char, (2, 3))
    return b.get_des()


_LAVA_KIT = (
    ("levitation", "=",),   # ring
    ("levitation", "!",),   # potion
    ("cold", "/",),         # wand
    ("frost horn", "(",),
)


def _register_lavacross() -> None:
    fixed = (
        ("LavaCross-Levitate-Ring-Inv", ("levitation", "="), False),
        ("LavaCross-Levitate-Potion-Inv", ("levitation", "!"), False),
        ("LavaCross-Levitate-Ring-Pickup", ("levitation", "="), True),
        ("LavaCross-Levitate-Potion-Pickup", ("levitation", "!"), True),
    )
    for name, (item, char), on_floor in fixed:
        register(EnvSpec(
            name,
            des=_lavacross_des(item, char, on_floor),
            actions=SKILL_ACTIONS, auto_menus=False, max_steps=250,
            start_inventory=() if on_floor else ((item, char),)))

    def floor_des(kit, tag):
        def gen(seed: int) -> str:
            rng = _task_rng(seed, tag)
            item, char = kit[rng.randrange(len(kit))]
            return _lavacross_des(item, char, True)
        return gen

    # random variants draw the crossing tool per seed and leave it on the
    # floor so the agent always has to find and use it
    for name, kit in (("LavaCross-Levitate", _LAVA_KIT[:2]),
                      ("LavaCross", _LAVA_KIT)):
        register(EnvSpec(
            name, des=floor_des(kit, name),
            actions=SKILL_ACTIONS, auto_menus=False, max_steps=250))


# ---------------------------------------------------------------------------
# WoD (wand of death)

def _wod_corridor_des(wand_on_floor: bool, awake: bool) -> str:
    rows = ["-----------------",
            "|...............|",
            "-----------------"]
    extra = ["BRANCH: (1,1,1,1), (0,0,0,0)",
             "STAIR: (15,1), down",
             "MONSTER: ('H',\"minotaur\"), (10,1), hostile" +
             ("" if awake else ", asleep")]
    if wand_on_floor:
        extra.append("OBJECT: ('/',\"death\"), (3,1)")
    w = 17
    out = ["MAZE: \"mylevel\", ' '", "GEOMETRY: center, center", "MAP"]
    out.extend(rows)
    out.append("ENDMAP")
    out.append(f'REGION: (0,0,{w - 1},2), lit, "ordinary"')
    out.extend(extra)
    return "\n".join(out) + "\n"


def _wod_pro_des() -> str:
    mw = 15
    rows = ["-" * (mw + 2)]
    for _ in range(mw):
        rows.append("|" + " " * mw + "|")
    rows.append("-" * (mw + 2))
    extra = ["MAZEWALK: (1,1), east",
             "STAIR: random, down",
             "OBJECT: ('/',\"death\"), random",
             "MONSTER: ('H',\"minotaur\"), random, hostile"]
    out = ["MAZE: \"mylevel\", ' '", "GEOMETRY: center, center", "MAP"]
    out.extend(rows)
    out.append("ENDMAP")
    out.append(f'REGION: (0,0,{mw + 1},{mw + 1}), lit, "ordinary"')
    out.extend(extra)
    return "\n".join(out) + "\n"


def _register_wod() -> None:
    register(EnvSpec(
        "WoD-Easy", des=_wod_corridor_des(False, False),
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=200,
        start_inventory=("death",), require=("stair down",)))
    register(EnvSpec(
        "WoD-Medium", des=_wod_corridor_des(True, False),
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=200,
        require=("stair down",)))
    register(EnvSpec(
        "WoD-Hard", des=_wod_corridor_des(True, True),
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=200,
        require=("stair down",)))
    register(EnvSpec(
        "WoD-Pro", des=_wod_pro_des(),
        actions=SKILL_ACTIONS, auto_menus=False, max_steps=1000,
        require=("stair down",)))


_register_use_tasks()
_register_lockeddoor()
_register_lavacross()
_register_wod()
