"""Compiled level instances and reachability validation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .terrain import Terrain, CODE_TO_DES_CHAR

CANVAS_WIDTH = 79
CANVAS_HEIGHT = 21

# terrain an agent can step onto (lava is enterable but lethal; water is not
# enterable on foot)
_PASSABLE = frozenset((
    Terrain.FLOOR, Terrain.CORRIDOR, Terrain.ICE, Terrain.CLOUD,
    Terrain.OPEN_DOOR, Terrain.STAIR_DOWN, Terrain.STAIR_UP,
    Terrain.ALTAR, Terrain.FOUNTAIN, Terrain.SINK,
))
# doors can eventually be opened, kicked or searched out, so solvability
# analysis treats them as passable
_DOOR_LIKE = frozenset((Terrain.CLOSED_DOOR, Terrain.LOCKED_DOOR,
                        Terrain.SECRET_DOOR))


@dataclass
class Placement:
    """One entity to materialize at episode start."""
    kind: str                 # "monster" | "object" | "trap" | "feature"
    name: str
    char: str
    x: int
    y: int
    hostile: bool = True
    asleep: bool = False
    quantity: int = 1
    montype: str = ""


@dataclass
class LevelBlueprint:
    name: str
    width: int = CANVAS_WIDTH
    height: int = CANVAS_HEIGHT
    terrain: bytearray = field(default_factory=lambda: bytearray(CANVAS_WIDTH * CANVAS_HEIGHT))
    lit: bytearray = field(default_factory=lambda: bytearray(CANVAS_WIDTH * CANVAS_HEIGHT))
    placements: list = field(default_factory=list)
    start_pos: tuple | None = None
    stairs: list = field(default_factory=list)   # (x, y, "up" | "down")
    premapped: bool = False

    def terrain_at(self, x: int, y: int) -> int:
        return self.terrain[y * self.width + x]

    def set_terrain(self, x: int, y: int, code: int) -> None:
        self.terrain[y * self.width + x] = code

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def find_stair(self, direction: str):
        for x, y, d in self.stairs:
            if d == direction:
                return (x, y)
        # stairs drawn as map glyphs live only in the terrain grid
        code = Terrain.STAIR_DOWN if direction == "down" else Terrain.STAIR_UP
        for y in range(self.height):
            for x in range(self.width):
                if self.terrain_at(x, y) == code:
                    return (x, y)
        return None

    def rows(self) -> list:
        """Terrain rendered as des-file characters, one string per row."""
        out = []
        for y in range(self.height):
            base = y * self.width
            out.append("".join(CODE_TO_DES_CHAR[c]
                               for c in self.terrain[base:base + self.width]))
        return out


def _boulder_cells(bp: LevelBlueprint) -> set:
    return {(p.x, p.y) for p in bp.placements
            if p.kind == "object" and p.name == "boulder"}


def validate_blueprint(bp: LevelBlueprint, reachable: list | None = None,
                       solvable: bool = False) -> list:
    """Check reachability requirements; returns a list of issue strings
    (empty means ok).

    reachable entries are (x, y) coords or feature names ("stair down",
    "stair up", "altar", "fountain", "sink").  With solvable=True, boulders
    block movement but may be pushed, and pushing one into water bridges it;
    without it, boulders are ignored for reachability.
    """
    issues = []
    start = bp.start_pos
    if start is None:
        for y in range(bp.height):
            for x in range(bp.width):
                if bp.terrain_at(x, y) in _PASSABLE:
                    start = (x, y)
                    break
            if start:
                break
    if start is None:
        return ["no passable start cell"]

    targets = []
    for req in reachable or []:
        if isinstance(req, tuple):
            targets.append((req, "coord %r" % (req,)))
        elif req == "stair down" or req == "stair up":
            pos = bp.find_stair(req.split()[1])
            if pos is None:
                issues.append("missing feature: %s" % req)
            else:
                targets.append((pos, req))
        else:
            code = {"altar": Terrain.ALTAR, "fountain": Terrain.FOUNTAIN,
                    "sink": Terrain.SINK}.get(req)
            if code is None:
                issues.append("unknown requirement: %s" % req)
                continue
            found = None
            for y in range(bp.height):
                for x in range(bp.width):
                    if bp.terrain_at(x, y) == code:
                        found = (x, y)
                        break
                if found:
                    break
            if found is None:
                issues.append("missing feature: %s" % req)
            else:
                targets.append((found, req))

    if solvable:
        seen = _push_reach(bp, start)
    else:
        seen = _plain_reach(bp, start)
    for pos, label in targets:
        if pos not in seen:
            issues.append("unreachable: %s" % label)
    return issues


def _plain_reach(bp: LevelBlueprint, start) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for nx in (x - 1, x, x + 1):
            for ny in (y - 1, y, y + 1):
                if (nx, ny) in seen or not bp.in_bounds(nx, ny):
                    continue
                code = bp.terrain_at(nx, ny)
                if code in _PASSABLE or code in _DOOR_LIKE:
                    seen.add((nx, ny))
                    queue.append((nx, ny))
    return seen


def _push_reach(bp: LevelBlueprint, start, max_states: int = 200000) -> set:
    """Cells the agent can occupy given boulder pushing (cardinal pushes;
    boulder into water makes a floor bridge, into lava destroys the boulder)."""
    boulders0 = frozenset(_boulder_cells(bp))
    bridged0 = frozenset()
    initial = (start, boulders0, bridged0)
    seen_states = {initial}
    reach = {start}
    queue = deque([initial])
    width, height = bp.width, bp.height

    def passable(x, y, bridged):
        if not (0 <= x < width and 0 <= y < height):
            return False
        code = bp.terrain[y * width + x]
        if code in _PASSABLE or code in _DOOR_LIKE:
            return True
        return code == Terrain.WATER and (x, y) in bridged

    while queue and len(seen_states) < max_states:
        (pos, boulders, bridged) = queue.popleft()
        x, y = pos
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if dx == 0 and dy == 0:
                    continue
                nx, ny = x + dx, y + dy
                if not (0 <= nx < width and 0 <= ny < height):
                    continue
                if (nx, ny) in boulders:
                    if dx and dy:
                        continue  # boulders push on cardinal moves only
                    bx, by = nx + dx, ny + dy
                    if not (0 <= bx < width and 0 <= by < height):
                        continue
                    if (bx, by) in boulders:
                        continue
                    code = bp.terrain[by * width + bx]
                    nb = set(boulders)
                    nb.discard((nx, ny))
                    nbr = bridged
                    if code == Terrain.WATER and (bx, by) not in bridged:
                        nbr = bridged | {(bx, by)}
                    elif code == Terrain.LAVA:
                        pass  # boulder sinks and is destroyed
                    elif passable(bx, by, bridged):
                        nb.add((bx, by))
                    else:
                        continue
                    state = ((nx, ny), frozenset(nb), nbr)
                    if state not in seen_states:
                        seen_states.add(state)
                        reach.add((nx, ny))
                        queue.append(state)
                elif passable(nx, ny, bridged):
                    state = ((nx, ny), boulders, bridged)
                    if state not in seen_states:
                        seen_states.add(state)
                        reach.add((nx, ny))
                        queue.append(state)
    return reach
