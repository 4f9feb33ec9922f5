"""Turn-based world state: agent actions, monster turns, items and hazards.

The engine is deliberately synchronous and allocation-light.  Terrain lives
in a flat bytearray, entity lookups are dicts keyed by flat cell index, and
the char/color/id display grids are numpy arrays patched cell by cell as
things move, so a quiet step touches only a handful of cells.

Interaction model: one action per step.  Multi-stage actions (eat, zap,
kick, ...) park a prompt on the state; only Confirm, MenuSelect and
Direction actions resolve a pending prompt, any other action cancels it
without advancing the clock.  When the state is built with
``auto_menus=True`` confirmations and item menus resolve themselves, which
is what navigation-flavored action sets rely on.
"""

from __future__ import annotations

import numpy as np

from ..blueprint import CANVAS_HEIGHT, CANVAS_WIDTH, LevelBlueprint
from ..catalog import ObjectDef, get_catalog
from ..errors import EngineError
from ..ids import (
    AGENT_COLOR,
    AGENT_ID,
    TRAP_COLOR,
    TRAP_IDS,
    entity_color,
    monster_id,
    object_id,
)
from ..rng import Rng, derive_seed, text_salt
from ..terrain import (
    DISPLAY_BYTE,
    DISPLAY_COLOR,
    SPAWNABLE,
    Terrain,
    WALKABLE,
)
from .fov import FovCache, line_of_sight

W = CANVAS_WIDTH
H = CANVAS_HEIGHT

# engine tuning constants
AGENT_HP_MAX = 16
UNARMED_DAMAGE = (1, 6)
HEAL_DICE = (2, 4)
POTION_LEVITATION_TURNS = 50
OPEN_DOOR_PROB = 80      # percent: shoulder an unlocked door open
KICK_DOOR_PROB = 50      # percent: kick breaks a closed or locked door
SEARCH_FIND_DIE = 3      # a secret door is found with probability 1/3 per search
RAY_RANGE = 20

MOVE_DELTAS = {
    "N": (0, -1), "S": (0, 1), "E": (1, 0), "W": (-1, 0),
    "NE": (1, -1), "NW": (-1, -1), "SE": (1, 1), "SW": (-1, 1),
}
DIR_ORDER = ("N", "S", "E", "W", "NE", "NW", "SE", "SW")

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
_BOULDER_ID = object_id("boulder", "0")

# terrain a monster may stand on: never doors, water, lava, trees or rock
_MONSTER_OK = frozenset((
    Terrain.FLOOR, Terrain.CORRIDOR, Terrain.ICE, Terrain.CLOUD,
    Terrain.STAIR_DOWN, Terrain.STAIR_UP, Terrain.ALTAR,
    Terrain.FOUNTAIN, Terrain.SINK,
))

_EAT_CATS = frozenset(("comestible",))
_WEAR_CATS = frozenset(("armor", "boots"))
_PUTON_CATS = frozenset(("ring",))
_APPLY_CATS = frozenset(("key", "tool"))


def _article(name: str) -> str:
    return "an" if name[0] in "aeiouAEIOU" else "a"


def describe_object(obj: ObjectDef | "ObjInstance") -> str:
    """Short in-world description, e.g. "an apple", "a wand of cold"."""
    name, cat = obj.name, obj.category
    if cat == "wand":
        return f"a wand of {name}"
    if cat == "potion":
        return f"a potion of {name}"
    if cat == "ring":
        return f"a ring of {name}"
    if cat == "boots":
        return f"a pair of {name}"
    if cat == "gold":
        return "a gold piece"
    if cat == "boulder":
        return "a boulder"
    if cat == "statue":
        return "a statue"
    return f"{_article(name)} {name}"


class Monster:
    __slots__ = ("name", "char", "x", "y", "hp", "damage", "hostile",
                 "instakill", "ranged", "sessile", "nodiag", "asleep", "eid")

    def __init__(self, mdef, x: int, y: int, hp: int, hostile: bool, asleep: bool):
        self.name = mdef.name
        self.char = mdef.char
        self.x = x
        self.y = y
        self.hp = hp
        self.damage = mdef.damage
        self.hostile = hostile
        self.instakill = mdef.instakill
        self.ranged = mdef.ranged
        self.sessile = mdef.sessile
        self.nodiag = mdef.nodiag
        self.asleep = asleep
        self.eid = monster_id(mdef.name)


class ObjInstance:
    __slots__ = ("name", "char", "category", "effect", "quantity", "eid")

    def __init__(self, odef: ObjectDef, quantity: int = 1):
        self.name = odef.name
        self.char = odef.char
        self.category = odef.category
        self.effect = odef.effect
        self.quantity = quantity
        self.eid = object_id(odef.name, odef.char)


def _damage_dice(obj: ObjInstance) -> tuple[int, int] | None:
    if obj.effect.startswith("damage:"):
        n, m = obj.effect[7:].split("d")
        return int(n), int(m)
    return None


# pristine layouts recur every episode, so their visibility memo is shared;
# states detach to a private cache on their first terrain edit
_FOV_REGISTRY: dict = {}


def _shared_fov_cache(bp) -> FovCache:
    key = (bytes(bp.terrain), bytes(bp.lit))
    cache = _FOV_REGISTRY.get(key)
    if cache is None:
        if len(_FOV_REGISTRY) >= 256:
            _FOV_REGISTRY.pop(next(iter(_FOV_REGISTRY)))
        cache = FovCache(bytearray(bp.terrain), bytes(bp.lit))
        _FOV_REGISTRY[key] = cache
    return cache


class WorldState:
    """Mutable world for one episode.  Build with :func:`reset`."""

    __slots__ = (
        "blueprint", "terrain", "fov", "rng", "auto_menus",
        "ax", "ay", "hp", "hp_max", "inventory", "wielded", "worn",
        "levit_turns", "levit_sources",
        "monsters", "monster_at", "boulders", "objects_at", "traps",
        "visible", "remembered", "clock", "message", "events",
        "episode_done", "death_cause", "prompt",
        "chars", "colors", "entity_ids", "_dirty", "_fov_shared",
    )

    def __init__(self, bp: LevelBlueprint, seed: int, auto_menus: bool,
                 start_inventory: tuple[str, ...]):
        self.blueprint = bp
        self.terrain = bytearray(bp.terrain)
        self.fov = _shared_fov_cache(bp)
        self._fov_shared = True
        self.rng = Rng(derive_seed(seed, text_salt("episode:" + bp.name)))
        self.auto_menus = auto_menus

        self.hp = AGENT_HP_MAX
        self.hp_max = AGENT_HP_MAX
        self.inventory: dict[str, ObjInstance] = {}
        self.wielded: str | None = None
        self.worn: set[str] = set()
        self.levit_turns = 0
        self.levit_sources: set[str] = set()

        self.monsters: list[Monster] = []
        self.monster_at: dict[int, Monster] = {}
        self.boulders: set[int] = set()
        self.objects_at: dict[int, list[ObjInstance]] = {}
        self.traps: dict[int, str] = {}

        self.clock = 0
        self.message = ""
        self.events: list[tuple] = []
        self.episode_done = False
        self.death_cause = ""
        self.prompt: tuple | None = None
        self._dirty: list[int] = []
        self.visible: frozenset[int] = frozenset()

        self.chars = np.full((H, W), 32, dtype=np.uint8)
        self.colors = np.zeros((H, W), dtype=np.uint8)
        self.entity_ids = np.zeros((H, W), dtype=np.uint8)
        self.remembered = bytearray(W * H)

        cat = get_catalog()
        self.ax = -1
        self.ay = -1
        for pl in bp.placements:
            idx = pl.y * W + pl.x
            if pl.kind == "monster":
                mdef = cat.monster(pl.name)
                hp = self.rng.roll(*mdef.hitdice)
                mon = Monster(mdef, pl.x, pl.y, hp, pl.hostile and mdef.hostile,
                              pl.asleep)
                self.monsters.append(mon)
                self.monster_at[idx] = mon
            elif pl.kind == "object":
                odef = cat.object(pl.name, pl.char)
                if odef.category == "boulder":
                    self.boulders.add(idx)
                else:
                    self.objects_at.setdefault(idx, []).append(
                        ObjInstance(odef, pl.quantity))
            elif pl.kind == "trap":
                self.traps[idx] = pl.name
        # traps from placements only; terrain features are already terrain

        for entry in start_inventory:
            # entry is a unique object name, or (name, class char) when the
            # name alone is ambiguous (e.g. ring vs potion of levitation)
            if isinstance(entry, str):
                self._give(cat.object(entry))
            else:
                name, char = entry
                self._give(cat.object(name, char))

        if bp.start_pos is not None:
            self.ax, self.ay = bp.start_pos
        else:
            self.ax, self.ay = self._random_free_cell()
        if bp.premapped:
            for i in range(W * H):
                self.remembered[i] = 1
            self._refresh_all()
        self._update_fov()

    # ------------------------------------------------------------------
    # setup helpers

    def _give(self, odef: ObjectDef, quantity: int = 1) -> str | None:
        for letter in _LETTERS:
            if letter not in self.inventory:
                self.inventory[letter] = ObjInstance(odef, quantity)
                return letter
        return None

    def _random_free_cell(self) -> tuple[int, int]:
        for _ in range(1000):
            x = self.rng.randrange(W)
            y = self.rng.randrange(H)
            idx = y * W + x
            if (SPAWNABLE[self.terrain[idx]] and idx not in self.monster_at
                    and idx not in self.boulders and idx not in self.traps):
                return x, y
        raise EngineError("no free cell for the agent")

    # ------------------------------------------------------------------
    # public queries

    def levitating(self) -> bool:
        return self.levit_turns > 0 or bool(self.levit_sources)

    def agent_damage(self) -> tuple[int, int]:
        if self.wielded is not None:
            obj = self.inventory.get(self.wielded)
            if obj is not None:
                dice = _damage_dice(obj)
                if dice is not None:
                    return dice
        return UNARMED_DAMAGE

    # ------------------------------------------------------------------
    # display grid upkeep

    def _refresh_cell(self, idx: int) -> None:
        if not self.remembered[idx]:
            return
        y, x = divmod(idx, W)
        if idx in self.visible:
            if x == self.ax and y == self.ay:
                self.chars[y, x] = 64  # '@'
                self.colors[y, x] = AGENT_COLOR
                self.entity_ids[y, x] = AGENT_ID
                return
            mon = self.monster_at.get(idx)
            if mon is not None:
                self.chars[y, x] = ord(mon.char)
                self.colors[y, x] = entity_color(mon.char)
                self.entity_ids[y, x] = mon.eid
                return
            if idx in self.boulders:
                self.chars[y, x] = 48  # '0'
                self.colors[y, x] = entity_color("0")
                self.entity_ids[y, x] = _BOULDER_ID
                return
            objs = self.objects_at.get(idx)
            if objs:
                top = objs[-1]
                self.chars[y, x] = ord(top.char)
                self.colors[y, x] = entity_color(top.char)
                self.entity_ids[y, x] = top.eid
                return
            trap = self.traps.get(idx)
            if trap is not None and trap != "invisible":
                self.chars[y, x] = 94  # '^'
                self.colors[y, x] = TRAP_COLOR
                self.entity_ids[y, x] = TRAP_IDS[trap]
                return
        code = self.terrain[idx]
        self.chars[y, x] = DISPLAY_BYTE[code]
        self.colors[y, x] = DISPLAY_COLOR[code]
        self.entity_ids[y, x] = code

    def _refresh_all(self) -> None:
        for idx in range(W * H):
            self._refresh_cell(idx)

    def _update_fov(self) -> None:
        new_vis = self.fov.visible_from(self.ax, self.ay)
        old_vis = self.visible
        if new_vis is not old_vis:
            self.visible = new_vis
            remembered = self.remembered
            for idx in new_vis:
                if idx not in old_vis:
                    remembered[idx] = 1
                    self._refresh_cell(idx)
            for idx in old_vis:
                if idx not in new_vis:
                    self._refresh_cell(idx)
        if self._dirty:
            for idx in self._dirty:
                if idx not in self.visible:
                    self._refresh_cell(idx)
            del self._dirty[:]

    def _touch(self, idx: int) -> None:
        # cells inside the current FOV refresh immediately; the rest wait
        # for _update_fov so moves out of sight land on the memory view
        if idx in self.visible:
            self._refresh_cell(idx)
        else:
            self._dirty.append(idx)

    def _terrain_changed(self, idx: int, code: int) -> None:
        self.terrain[idx] = code
        if self._fov_shared:
            # detach from the blueprint-level cache before the first edit;
            # other episodes on the same layout keep the pristine one
            self.fov = FovCache(self.terrain, self.fov.lit_bytes)
            self._fov_shared = False
        self.fov.invalidate()
        self._touch(idx)

    # ------------------------------------------------------------------
    # messages and events

    def _msg(self, text: str) -> None:
        if self.message:
            self.message = self.message + "  " + text
        else:
            self.message = text

    def _die(self, cause: str, text: str) -> None:
        self.hp = 0
        self.episode_done = True
        self.death_cause = cause
        self.events.append(("Died", cause))
        self._msg(text)

    # ------------------------------------------------------------------
    # main entry point

    def step(self, action: str) -> tuple[tuple, bool]:
        if self.episode_done:
            raise EngineError("episode is already done")
        self.events = []
        self.message = ""
        time_advanced = self._dispatch(action)
        if time_advanced:
            self.clock += 1
            if not self.episode_done:
                self._monster_phase()
            if not self.episode_done:
                self._tick_levitation()
        self._update_fov()
        return tuple(self.events), time_advanced

    def _dispatch(self, action: str) -> bool:
        if self.prompt is not None:
            return self._resolve_prompt(action)
        delta = MOVE_DELTAS.get(action)
        if delta is not None:
            return self._do_move(*delta)
        handler = _ACTIONS.get(action)
        if handler is None:
            if action.startswith("select_") or action.startswith("dir_") or action in ("yes", "no"):
                return False  # prompt replies with no prompt pending
            raise EngineError(f"unknown action: {action}")
        return handler(self)

    # ------------------------------------------------------------------
    # prompts

    def _resolve_prompt(self, action: str) -> bool:
        kind = self.prompt[0]
        if kind == "confirm":
            op = self.prompt[2]
            self.prompt = None
            if action == "yes":
                return self._exec(op, None)
            if action == "no":
                self._msg("Never mind.")
            return False
        if kind == "item":
            letters, op = self.prompt[2], self.prompt[3]
            self.prompt = None
            if action.startswith("select_") and action[7:] in letters:
                return self._exec(op, action[7:])
            self._msg("Never mind.")
            return False
        if kind == "direction":
            op = self.prompt[2]
            self.prompt = None
            if action.startswith("dir_") and action[4:] in MOVE_DELTAS:
                return self._exec(op, action[4:])
            self._msg("Never mind.")
            return False
        raise EngineError(f"bad prompt state: {self.prompt!r}")

    def _ask_confirm(self, question: str, op: tuple) -> bool:
        if self.auto_menus:
            return self._exec(op, None)
        self.prompt = ("confirm", question, op)
        self._msg(question)
        return False

    def _ask_item(self, question: str, letters: str, op: tuple) -> bool:
        if self.auto_menus:
            return self._exec(op, letters[0])
        self.prompt = ("item", question, letters, op)
        self._msg(question)
        return False

    def _ask_direction(self, question: str, op: tuple) -> bool:
        self.prompt = ("direction", question, op)
        self._msg(question)
        return False

    def _exec(self, op: tuple, arg: str | None) -> bool:
        return _OPS[op[0]](self, op, arg)

    # ------------------------------------------------------------------
    # movement

    def _do_move(self, dx: int, dy: int) -> bool:
        ax, ay = self.ax, self.ay
        nx, ny = ax + dx, ay + dy
        if not (0 <= nx < W and 0 <= ny < H):
            return False
        idx = ny * W + nx
        mon = self.monster_at.get(idx)
        if mon is not None:
            self._attack_monster(mon)
            return True
        if idx in self.boulders:
            return self._push_boulder(idx, dx, dy)
        terrain = self.terrain
        code = terrain[idx]
        if not WALKABLE[code] and not (code == Terrain.WATER and self.levitating()):
            return False
        if dx and dy:
            # no diagonal moves through a doorway
            if code == Terrain.OPEN_DOOR or terrain[ay * W + ax] == Terrain.OPEN_DOOR:
                return False
        self._move_agent(nx, ny)
        return True

    def _move_agent(self, nx: int, ny: int) -> None:
        old_idx = self.ay * W + self.ax
        self.ax, self.ay = nx, ny
        self._touch(old_idx)
        self._touch(ny * W + nx)
        self._enter_cell(nx, ny)

    def _enter_cell(self, x: int, y: int) -> None:
        idx = y * W + x
        self.events.append(("ReachedCoord", (x, y)))
        code = self.terrain[idx]
        if code == Terrain.LAVA and not self.levitating():
            self._die("lava", "You sink into the lava...")
            return
        if code == Terrain.STAIR_DOWN:
            self.events.append(("ReachedStair", "down"))
        elif code == Terrain.STAIR_UP:
            self.events.append(("ReachedStair", "up"))
        elif code == Terrain.ALTAR:
            self.events.append(("ReachedFeature", "altar"))
        elif code == Terrain.FOUNTAIN:
            self.events.append(("ReachedFeature", "fountain"))
        elif code == Terrain.SINK:
            self.events.append(("ReachedFeature", "sink"))
        trap = self.traps.get(idx)
        if trap is not None and not self.levitating():
            self._trigger_trap(idx, trap)

    def _trigger_trap(self, idx: int, kind: str) -> None:
        self.events.append(("TrapTriggered", kind))
        if kind == "teleport":
            self._msg("You feel a wrenching sensation.")
            dest = self._teleport_target()
            if dest is not None:
                old_idx = self.ay * W + self.ax
                self.ay, rem = divmod(dest, W)
                self.ax = rem
                self._touch(old_idx)
                self._touch(dest)
                self._enter_cell(self.ax, self.ay)
        elif kind == "invisible":
            self._msg("You triggered a hidden trap!")
            self.episode_done = True
        elif kind == "fire":
            self._msg("A tower of flame erupts from the floor!")

    def _teleport_target(self) -> int | None:
        agent_idx = self.ay * W + self.ax
        terrain = self.terrain
        cells = [
            i for i in range(W * H)
            if SPAWNABLE[terrain[i]] and i not in self.traps
            and i not in self.monster_at and i not in self.boulders
            and i != agent_idx
        ]
        if not cells:
            return None
        return self.rng.choice(cells)

    def _push_boulder(self, bidx: int, dx: int, dy: int) -> bool:
        if dx and dy:
            return False  # boulders only roll along rows and columns
        by, bx = divmod(bidx, W)
        fx, fy = bx + dx, by + dy
        if not (0 <= fx < W and 0 <= fy < H):
            return False
        fidx = fy * W + fx
        if fidx in self.boulders or fidx in self.monster_at:
            return False
        code = self.terrain[fidx]
        if code == Terrain.WATER:
            self.boulders.discard(bidx)
            self._terrain_changed(fidx, Terrain.FLOOR)
            self._touch(bidx)
            self._msg("The boulder falls into the water and disappears. "
                      "Now you can cross it!")
            self._move_agent(bx, by)
            return True
        if code == Terrain.LAVA:
            self.boulders.discard(bidx)
            self._touch(bidx)
            self._touch(fidx)
            self._msg("The boulder sinks into the lava.")
            self._move_agent(bx, by)
            return True
        if WALKABLE[code] and code != Terrain.OPEN_DOOR:
            self.boulders.discard(bidx)
            self.boulders.add(fidx)
            self._touch(fidx)
            self._msg("With great effort you move the boulder.")
            if code == Terrain.FOUNTAIN and all(
                    self.terrain[b] == Terrain.FOUNTAIN for b in self.boulders):
                self.events.append(("AllBouldersOnFountains",))
            self._move_agent(bx, by)
            return True
        return False

    # ------------------------------------------------------------------
    # combat

    def _attack_monster(self, mon: Monster) -> None:
        dmg = self.rng.roll(*self.agent_damage())
        mon.hp -= dmg
        if mon.hp <= 0:
            self._remove_monster(mon)
            self.events.append(("Killed", mon.name))
            self._msg(f"You kill the {mon.name}!")
        else:
            self._msg(f"You hit the {mon.name}.")

    def _remove_monster(self, mon: Monster) -> None:
        idx = mon.y * W + mon.x
        self.monsters.remove(mon)
        if self.monster_at.get(idx) is mon:
            del self.monster_at[idx]
        self._touch(idx)

    def _monster_attack(self, mon: Monster) -> None:
        if mon.instakill:
            self._die(mon.name, f"The {mon.name} destroys you!")
            return
        dmg = self.rng.roll(*mon.damage)
        self.hp -= dmg
        self._msg(f"The {mon.name} hits!")
        if self.hp <= 0:
            self._die(mon.name, "You die...")

    # ------------------------------------------------------------------
    # monster phase

    def _monster_phase(self) -> None:
        ax, ay = self.ax, self.ay
        for mon in list(self.monsters):
            if self.episode_done:
                return
            dx = ax - mon.x
            dy = ay - mon.y
            adx = dx if dx >= 0 else -dx
            ady = dy if dy >= 0 else -dy
            cheb = adx if adx > ady else ady
            if mon.asleep:
                if cheb <= 1:
                    mon.asleep = False  # waking costs the monster its turn
                continue
            if cheb <= 1 and mon.hostile:
                if mon.nodiag and adx + ady > 1:
                    pass  # cardinal-only attacker on a diagonal: fall through to move
                else:
                    self._monster_attack(mon)
                    continue
            if mon.sessile:
                continue
            if mon.hostile and line_of_sight(self.terrain, mon.x, mon.y, ax, ay):
                self._monster_chase(mon, dx, dy)
            else:
                self._monster_wander(mon)

    def _monster_can_enter(self, mon: Monster, idx: int) -> bool:
        return (self.terrain[idx] in _MONSTER_OK and idx not in self.monster_at
                and idx not in self.boulders and idx not in self.traps)

    def _monster_move(self, mon: Monster, nx: int, ny: int) -> None:
        old_idx = mon.y * W + mon.x
        del self.monster_at[old_idx]
        mon.x, mon.y = nx, ny
        self.monster_at[ny * W + nx] = mon
        self._touch(old_idx)
        self._touch(ny * W + nx)

    def _monster_chase(self, mon: Monster, dx: int, dy: int) -> None:
        sx = (dx > 0) - (dx < 0)
        sy = (dy > 0) - (dy < 0)
        if mon.nodiag:
            # cardinal movers close the longer axis first
            if abs(dx) >= abs(dy):
                tries = ((sx, 0), (0, sy))
            else:
                tries = ((0, sy), (sx, 0))
        else:
            tries = ((sx, sy), (sx, 0), (0, sy))
        for tx, ty in tries:
            if tx == 0 and ty == 0:
                continue
            nx, ny = mon.x + tx, mon.y + ty
            if not (0 <= nx < W and 0 <= ny < H):
                continue
            if nx == self.ax and ny == self.ay:
                continue
            if self._monster_can_enter(mon, ny * W + nx):
                self._monster_move(mon, nx, ny)
                return

    def _monster_wander(self, mon: Monster) -> None:
        cands = []
        for name in DIR_ORDER:
            tx, ty = MOVE_DELTAS[name]
            if mon.nodiag and tx and ty:
                continue
            nx, ny = mon.x + tx, mon.y + ty
            if not (0 <= nx < W and 0 <= ny < H):
                continue
            if nx == self.ax and ny == self.ay:
                continue
            if self._monster_can_enter(mon, ny * W + nx):
                cands.append((nx, ny))
        if cands:
            nx, ny = self.rng.choice(cands)
            self._monster_move(mon, nx, ny)

    # ------------------------------------------------------------------
    # levitation clock

    def _tick_levitation(self) -> None:
        if self.levit_turns > 0:
            self.levit_turns -= 1
            if self.levit_turns == 0 and not self.levit_sources:
                code = self.terrain[self.ay * W + self.ax]
                if code == Terrain.LAVA:
                    self._die("lava", "You float gently down... into molten lava!")
                elif code == Terrain.WATER:
                    self._die("water", "You float gently down... into the water!")
                else:
                    self._msg("You float gently to the ground.")

    # ------------------------------------------------------------------
    # simple whole-turn actions

    def _act_search(self) -> bool:
        found = 0
        terrain = self.terrain
        for name in DIR_ORDER:
            dx, dy = MOVE_DELTAS[name]
            nx, ny = self.ax + dx, self.ay + dy
            if not (0 <= nx < W and 0 <= ny < H):
                continue
            idx = ny * W + nx
            if terrain[idx] == Terrain.SECRET_DOOR and self.rng.randrange(SEARCH_FIND_DIE) == 0:
                self._terrain_changed(idx, Terrain.CLOSED_DOOR)
                found += 1
        if found:
            self._msg("You find a hidden door!")
        else:
            self._msg("You search the walls around you.")
        return True

    def _act_kick(self) -> bool:
        return self._ask_direction("In what direction?", ("kick_dir",))

    def _act_open(self) -> bool:
        return self._ask_direction("In what direction?", ("open_dir",))

    def _act_pray(self) -> bool:
        return self._ask_confirm("Are you sure you want to pray? [yn] (n)",
                                 ("pray_go",))

    def _act_pickup(self) -> bool:
        idx = self.ay * W + self.ax
        objs = self.objects_at.get(idx)
        if not objs:
            self._msg("There is nothing here to pick up.")
            return False
        obj = objs.pop()
        if not objs:
            del self.objects_at[idx]
        letter = None
        for cand in _LETTERS:
            if cand not in self.inventory:
                letter = cand
                break
        if letter is None:
            objs.append(obj)
            self.objects_at[idx] = objs
            self._msg("Your pack is full.")
            return False
        self.inventory[letter] = obj
        self._touch(idx)
        self.events.append(("PickedUp", obj.name))
        self._msg(f"{letter} - {describe_object(obj)}.")
        return True

    # ------------------------------------------------------------------
    # item actions

    def _inv_letters(self, categories: frozenset[str]) -> str:
        return "".join(
            letter for letter, obj in self.inventory.items()
            if obj.category in categories
        )

    def _act_eat(self) -> bool:
        idx = self.ay * W + self.ax
        objs = self.objects_at.get(idx)
        if objs:
            for obj in objs:
                if obj.category == "comestible":
                    name = obj.name
                    article = _article(name)
                    return self._ask_confirm(
                        f"There is {article} {name} here; eat it? [ynq] (n)",
                        ("eat_floor", idx))
        letters = self._inv_letters(_EAT_CATS)
        if not letters:
            self._msg("You don't have anything to eat.")
            return False
        return self._ask_item(f"What do you want to eat? [{letters} or ?*]",
                              letters, ("eat_inv",))

    def _act_quaff(self) -> bool:
        letters = self._inv_letters(frozenset(("potion",)))
        if not letters:
            self._msg("You don't have anything to drink.")
            return False
        return self._ask_item(f"What do you want to drink? [{letters} or ?*]",
                              letters, ("quaff",))

    def _act_wear(self) -> bool:
        letters = "".join(l for l in self._inv_letters(_WEAR_CATS)
                          if l not in self.worn)
        if not letters:
            self._msg("You don't have anything else to wear.")
            return False
        return self._ask_item(f"What do you want to wear? [{letters} or ?*]",
                              letters, ("wear",))

    def _act_puton(self) -> bool:
        letters = "".join(l for l in self._inv_letters(_PUTON_CATS)
                          if l not in self.worn)
        if not letters:
            self._msg("You don't have anything else to put on.")
            return False
        return self._ask_item(f"What do you want to put on? [{letters} or ?*]",
                              letters, ("puton",))

    def _act_wield(self) -> bool:
        letters = self._inv_letters(frozenset(("weapon",)))
        if not letters:
            self._msg("You don't have anything to wield.")
            return False
        return self._ask_item(f"What do you want to wield? [{letters} or ?*]",
                              letters, ("wield",))

    def _act_zap(self) -> bool:
        letters = self._inv_letters(frozenset(("wand",)))
        if not letters:
            self._msg("You don't have anything to zap.")
            return False
        return self._ask_item(f"What do you want to zap? [{letters} or ?*]",
                              letters, ("zap",))

    def _act_read(self) -> bool:
        self._msg("You don't have anything to read.")
        return False

    def _act_apply(self) -> bool:
        letters = self._inv_letters(_APPLY_CATS)
        if not letters:
            self._msg("You don't have anything to apply.")
            return False
        return self._ask_item(f"What do you want to use or apply? [{letters} or ?*]",
                              letters, ("apply",))

    # ------------------------------------------------------------------
    # deferred operations (prompt resolutions)

    def _op_eat_floor(self, op: tuple, arg) -> bool:
        idx = op[1]
        objs = self.objects_at.get(idx)
        if objs:
            for i, obj in enumerate(objs):
                if obj.category == "comestible":
                    del objs[i]
                    if not objs:
                        del self.objects_at[idx]
                    self._touch(idx)
                    self.events.append(("Ate", obj.name))
                    self._msg(f"This {obj.name} is delicious!")
                    return True
        self._msg("You don't see it here.")
        return False

    def _op_eat_inv(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.pop(letter, None)
        if obj is None or obj.category != "comestible":
            self._msg("You can't eat that!")
            return False
        self.events.append(("Ate", obj.name))
        self._msg(f"This {obj.name} is delicious!")
        return True

    def _op_quaff(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.pop(letter, None)
        if obj is None or obj.category != "potion":
            self._msg("You can't drink that!")
            return False
        self.events.append(("Quaffed", obj.name))
        if obj.effect == "levitation":
            self.levit_turns = POTION_LEVITATION_TURNS
            self._msg("You start to float in the air!")
        elif obj.effect == "heal":
            self.hp = min(self.hp_max, self.hp + self.rng.roll(*HEAL_DICE))
            self._msg("You feel better.")
        else:
            self._msg("This tastes like water.")
        return True

    def _op_wear(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.get(letter)
        if obj is None or obj.category not in _WEAR_CATS or letter in self.worn:
            self._msg("You can't wear that!")
            return False
        self.worn.add(letter)
        self.events.append(("Worn", obj.name))
        if obj.effect == "levitation":
            self.levit_sources.add(letter)
            self._msg("You start to float in the air!")
        else:
            self._msg(f"You are now wearing {describe_object(obj)}.")
        return True

    def _op_puton(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.get(letter)
        if obj is None or obj.category not in _PUTON_CATS or letter in self.worn:
            self._msg("You can't put that on!")
            return False
        self.worn.add(letter)
        self.events.append(("PutOn", obj.name))
        if obj.effect == "levitation":
            self.levit_sources.add(letter)
            self._msg("You start to float in the air!")
        else:
            self._msg(f"You are now wearing {describe_object(obj)}.")
        return True

    def _op_wield(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.get(letter)
        if obj is None or obj.category != "weapon":
            self._msg("You can't wield that!")
            return False
        self.wielded = letter
        self.events.append(("Wielded", obj.name))
        self._msg(f"{letter} - {describe_object(obj)} (weapon in hand).")
        return True

    def _op_zap(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.get(letter)
        if obj is None or obj.category != "wand":
            self._msg("You can't zap that!")
            return False
        return self._ask_direction("In what direction?", ("zap_dir", letter))

    def _op_zap_dir(self, op: tuple, direction: str) -> bool:
        obj = self.inventory.get(op[1])
        if obj is None:
            return True
        self._fire_ray(obj, direction)
        return True

    def _op_apply(self, op: tuple, letter: str) -> bool:
        obj = self.inventory.get(letter)
        if obj is None or obj.category not in _APPLY_CATS:
            self._msg("You can't apply that!")
            return False
        if obj.effect == "unlock":
            return self._ask_direction("In what direction?", ("unlock_dir", letter))
        if obj.effect.startswith("ray:"):
            return self._ask_direction("In what direction?", ("apply_ray_dir", letter))
        if obj.name == "magic whistle":
            self._msg("You produce a high-pitched humming noise.")
            return True
        self._msg("You have no use for it right now.")
        return True

    def _op_unlock_dir(self, op: tuple, direction: str) -> bool:
        dx, dy = MOVE_DELTAS[direction]
        nx, ny = self.ax + dx, self.ay + dy
        if not (0 <= nx < W and 0 <= ny < H):
            self._msg("You see no door there.")
            return True
        idx = ny * W + nx
        code = self.terrain[idx]
        if code == Terrain.LOCKED_DOOR:
            self._terrain_changed(idx, Terrain.OPEN_DOOR)
            self.events.append(("DoorOpened",))
            self._msg("You unlock the door and it swings open.")
        elif code == Terrain.CLOSED_DOOR:
            self._terrain_changed(idx, Terrain.OPEN_DOOR)
            self.events.append(("DoorOpened",))
            self._msg("The door opens.")
        else:
            self._msg("You see no door there.")
        return True

    def _op_apply_ray_dir(self, op: tuple, direction: str) -> bool:
        obj = self.inventory.get(op[1])
        if obj is None:
            return True
        self._fire_ray(obj, direction)
        return True

    def _op_open_dir(self, op: tuple, direction: str) -> bool:
        dx, dy = MOVE_DELTAS[direction]
        nx, ny = self.ax + dx, self.ay + dy
        if not (0 <= nx < W and 0 <= ny < H):
            self._msg("You see no door there.")
            return True
        idx = ny * W + nx
        code = self.terrain[idx]
        if code == Terrain.CLOSED_DOOR:
            if self.rng.chance(OPEN_DOOR_PROB):
                self._terrain_changed(idx, Terrain.OPEN_DOOR)
                self.events.append(("DoorOpened",))
                self._msg("The door opens.")
            else:
                self._msg("The door resists!")
        elif code == Terrain.LOCKED_DOOR:
            self._msg("This door is locked.")
        elif code == Terrain.OPEN_DOOR:
            self._msg("This door is already open.")
        else:
            self._msg("You see no door there.")
        return True

    def _op_kick_dir(self, op: tuple, direction: str) -> bool:
        dx, dy = MOVE_DELTAS[direction]
        nx, ny = self.ax + dx, self.ay + dy
        if not (0 <= nx < W and 0 <= ny < H):
            self._msg("You kick at empty space.")
            return True
        idx = ny * W + nx
        code = self.terrain[idx]
        if code in (Terrain.CLOSED_DOOR, Terrain.LOCKED_DOOR):
            if self.rng.chance(KICK_DOOR_PROB):
                self._terrain_changed(idx, Terrain.OPEN_DOOR)
                self.events.append(("DoorOpened",))
                self._msg("As you kick the door, it crashes open!")
            else:
                self._msg("WHAMM!!")
        elif not WALKABLE[code]:
            self._msg("Ouch!  That hurts!")
        else:
            self._msg("You kick at empty space.")
        return True

    def _op_pray_go(self, op: tuple, arg) -> bool:
        if self.terrain[self.ay * W + self.ax] == Terrain.ALTAR:
            self.events.append(("Prayed",))
            self._msg("You feel that the gods are pleased.")
        else:
            self._msg("You pray to the gods.")
        return True

    # ------------------------------------------------------------------
    # rays

    def _fire_ray(self, obj: ObjInstance, direction: str) -> None:
        kind = obj.effect.split(":", 1)[1] if ":" in obj.effect else ""
        dx, dy = MOVE_DELTAS[direction]
        if kind == "death":
            self._msg("Death rays shoot out from the wand.")
        elif kind == "cold":
            self._msg("A ray of cold shoots out.")
        x, y = self.ax, self.ay
        terrain = self.terrain
        for _ in range(RAY_RANGE):
            x += dx
            y += dy
            if not (0 <= x < W and 0 <= y < H):
                return
            idx = y * W + x
            code = terrain[idx]
            if kind == "death":
                mon = self.monster_at.get(idx)
                if mon is not None:
                    self._remove_monster(mon)
                    self.events.append(("Killed", mon.name))
                    self._msg(f"The death ray hits the {mon.name}!  "
                              f"The {mon.name} dies.")
                    return
                if idx in self.boulders:
                    return
            elif kind == "cold":
                if code == Terrain.LAVA:
                    self._terrain_changed(idx, Terrain.ICE)
                    self._msg("The lava cools and solidifies.")
                elif code == Terrain.WATER:
                    self._terrain_changed(idx, Terrain.ICE)
                    self._msg("The water freezes over.")
            if code in (Terrain.WALL_H, Terrain.WALL_V, Terrain.SOLID,
                        Terrain.TREE, Terrain.CLOSED_DOOR,
                        Terrain.LOCKED_DOOR, Terrain.SECRET_DOOR):
                return


_ACTIONS = {
    "search": WorldState._act_search,
    "kick": WorldState._act_kick,
    "open": WorldState._act_open,
    "eat": WorldState._act_eat,
    "pickup": WorldState._act_pickup,
    "apply": WorldState._act_apply,
    "wear": WorldState._act_wear,
    "wield": WorldState._act_wield,
    "puton": WorldState._act_puton,
    "quaff": WorldState._act_quaff,
    "zap": WorldState._act_zap,
    "pray": WorldState._act_pray,
    "read": WorldState._act_read,
}

_OPS = {
    "eat_floor": WorldState._op_eat_floor,
    "eat_inv": WorldState._op_eat_inv,
    "quaff": WorldState._op_quaff,
    "wear": WorldState._op_wear,
    "puton": WorldState._op_puton,
    "wield": WorldState._op_wield,
    "zap": WorldState._op_zap,
    "zap_dir": WorldState._op_zap_dir,
    "apply": WorldState._op_apply,
    "unlock_dir": WorldState._op_unlock_dir,
    "apply_ray_dir": WorldState._op_apply_ray_dir,
    "open_dir": WorldState._op_open_dir,
    "kick_dir": WorldState._op_kick_dir,
    "pray_go": WorldState._op_pray_go,
}


def all_action_names() -> list[str]:
    names = list(MOVE_DELTAS)
    names += list(_ACTIONS)
    names += ["yes", "no"]
    names += ["select_" + c for c in _LETTERS]
    names += ["dir_" + d for d in MOVE_DELTAS]
    return names


def reset(bp: LevelBlueprint, seed: int, auto_menus: bool = False,
          start_inventory: tuple[str, ...] = ()) -> WorldState:
    """Build a fresh episode state on the given compiled level."""
    return WorldState(bp, seed, auto_menus, start_inventory)


def step(state: WorldState, action: str) -> tuple[WorldState, tuple, bool]:
    """Advance the world by one agent action.

    Returns ``(state, events, time_advanced)``.  The state is mutated in
    place; the return value keeps call sites explicit about ordering.
    """
    events, time_advanced = state.step(action)
    return state, events, time_advanced
