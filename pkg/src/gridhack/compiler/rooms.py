"""Room placement and corridor digging for ROOM-type levels."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..errors import CompileError, PlacementError
from ..rng import Rng
from ..terrain import Terrain

PLACE_ATTEMPTS = 1000
MIN_ROOM = 3
MAX_ROOM = 9


@dataclass
class PlacedRoom:
    """A carved room: (x, y, w, h) is the floor interior; walls surround it."""
    x: int
    y: int
    w: int
    h: int
    lit: bool
    openings: list = field(default_factory=list)

    def wall_box(self):
        return (self.x - 1, self.y - 1, self.x + self.w, self.y + self.h)

    def contains(self, cx: int, cy: int) -> bool:
        return self.x <= cx < self.x + self.w and self.y <= cy < self.y + self.h


def _boxes_clash(a, b, gap: int = 1) -> bool:
    ax1, ay1, ax2, ay2 = a
    bx1, by1, bx2, by2 = b
    return not (ax2 + gap < bx1 or bx2 + gap < ax1 or
                ay2 + gap < by1 or by2 + gap < ay1)


def room_slot(size, align, rng: Rng, width: int, height: int,
              taken: list) -> tuple:
    """Pick the interior origin for a room of interior size (w, h).

    align = (halign, valign) or None for random placement.  Walls need one
    extra cell on every side; random rooms keep a >=1 cell gap to other rooms.
    """
    w, h = size
    if w + 2 > width or h + 2 > height:
        raise CompileError("room %dx%d does not fit the canvas" % (w, h))
    if align is not None:
        ha, va = align
        if ha == "center":
            x = (width - (w + 2)) // 2 + 1
        elif ha == "left":
            x = 1
        elif ha == "right":
            x = width - w - 1
        else:
            raise CompileError("unknown horizontal alignment: %s" % ha)
        if va == "center":
            y = (height - (h + 2)) // 2 + 1
        elif va == "top":
            y = 1
        elif va == "bottom":
            y = height - h - 1
        else:
            raise CompileError("unknown vertical alignment: %s" % va)
        return x, y
    for _ in range(PLACE_ATTEMPTS):
        x = rng.randint(1, width - w - 1)
        y = rng.randint(1, height - h - 1)
        box = (x - 1, y - 1, x + w, y + h)
        if not any(_boxes_clash(box, t) for t in taken):
            return x, y
    raise PlacementError("no room slot found for a %dx%d room after %d attempts"
                         % (w, h, PLACE_ATTEMPTS))


def random_room_size(rng: Rng) -> tuple:
    return rng.randint(MIN_ROOM, MAX_ROOM), rng.randint(MIN_ROOM, MAX_ROOM)


def carve_room(terrain: bytearray, lit: bytearray, width: int,
               room: PlacedRoom) -> None:
    x1, y1, x2, y2 = room.wall_box()
    for y in range(y1, y2 + 1):
        base = y * width
        for x in range(x1, x2 + 1):
            if room.contains(x, y):
                terrain[base + x] = Terrain.FLOOR
            elif y in (y1, y2):
                terrain[base + x] = Terrain.WALL_H
            else:
                terrain[base + x] = Terrain.WALL_V
            if room.lit:
                lit[base + x] = 1


_WALLS = ("north", "south", "east", "west")


def wall_cells(room: PlacedRoom, wall: str) -> list:
    """Candidate door cells along one wall, excluding corners."""
    x1, y1, x2, y2 = room.wall_box()
    if wall == "north":
        return [(x, y1) for x in range(room.x, room.x + room.w)]
    if wall == "south":
        return [(x, y2) for x in range(room.x, room.x + room.w)]
    if wall == "west":
        return [(x1, y) for y in range(room.y, room.y + room.h)]
    if wall == "east":
        return [(x2, y) for y in range(room.y, room.y + room.h)]
    raise CompileError("unknown wall: %s" % wall)


def punch_opening(terrain: bytearray, width: int, room: PlacedRoom,
                  cell, code: int) -> None:
    terrain[cell[1] * width + cell[0]] = code
    room.openings.append(cell)


def _outward(room: PlacedRoom, cell) -> tuple:
    x, y = cell
    x1, y1, x2, y2 = room.wall_box()
    if y == y1:
        return (0, -1)
    if y == y2:
        return (0, 1)
    if x == x1:
        return (-1, 0)
    return (1, 0)


def _dig(terrain: bytearray, width: int, height: int, rooms: list,
         src, dst) -> bool:
    """BFS a corridor between two cells just outside two room walls, digging
    through solid rock and existing corridors but never through rooms."""
    blocked = set()
    for r in rooms:
        x1, y1, x2, y2 = r.wall_box()
        for y in range(y1, y2 + 1):
            for x in range(x1, x2 + 1):
                blocked.add((x, y))

    def passable(x, y):
        if not (0 <= x < width and 0 <= y < height):
            return False
        if (x, y) in blocked:
            return False
        return terrain[y * width + x] in (Terrain.SOLID, Terrain.CORRIDOR)

    if not passable(*src) or not passable(*dst):
        return False
    prev = {src: None}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        if cur == dst:
            cell = cur
            while cell is not None:
                if terrain[cell[1] * width + cell[0]] == Terrain.SOLID:
                    terrain[cell[1] * width + cell[0]] = Terrain.CORRIDOR
                cell = prev[cell]
            return True
        x, y = cur
        for nxt in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nxt not in prev and passable(*nxt):
                prev[nxt] = cur
                queue.append(nxt)
    return False


def _connect_pair(terrain: bytearray, width: int, height: int, rooms: list,
                  a: PlacedRoom, b: PlacedRoom, rng: Rng) -> bool:
    acx, acy = a.x + a.w // 2, a.y + a.h // 2
    bcx, bcy = b.x + b.w // 2, b.y + b.h // 2
    if abs(bcx - acx) >= abs(bcy - acy):
        wa, wb = ("east", "west") if bcx >= acx else ("west", "east")
    else:
        wa, wb = ("south", "north") if bcy >= acy else ("north", "south")
    walls_a = [wa] + [w for w in _WALLS if w != wa]
    walls_b = [wb] + [w for w in _WALLS if w != wb]
    for try_wa, try_wb in zip(walls_a, walls_b):
        cells_a = wall_cells(a, try_wa)
        cells_b = wall_cells(b, try_wb)
        for _ in range(8):
            ca = cells_a[rng.randrange(len(cells_a))]
            cb = cells_b[rng.randrange(len(cells_b))]
            da = _outward(a, ca)
            db = _outward(b, cb)
            src = (ca[0] + da[0], ca[1] + da[1])
            dst = (cb[0] + db[0], cb[1] + db[1])
            if _dig(terrain, width, height, rooms, src, dst):
                punch_opening(terrain, width, a, ca, Terrain.FLOOR)
                punch_opening(terrain, width, b, cb, Terrain.FLOOR)
                return True
    return False


def _reachable_all(terrain: bytearray, width: int, height: int,
                   rooms: list) -> bool:
    start = (rooms[0].x, rooms[0].y)
    seen = {start}
    queue = deque([start])
    passable = frozenset((Terrain.FLOOR, Terrain.CORRIDOR, Terrain.CLOSED_DOOR,
                          Terrain.OPEN_DOOR, Terrain.LOCKED_DOOR,
                          Terrain.SECRET_DOOR, Terrain.STAIR_DOWN,
                          Terrain.STAIR_UP, Terrain.ALTAR, Terrain.FOUNTAIN,
                          Terrain.SINK, Terrain.ICE))
    while queue:
        x, y = queue.popleft()
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= nx < width and 0 <= ny < height and (nx, ny) not in seen \
                    and terrain[ny * width + nx] in passable:
                seen.add((nx, ny))
                queue.append((nx, ny))
    return all((r.x, r.y) in seen for r in rooms)


def random_corridors(terrain: bytearray, width: int, height: int,
                     rooms: list, rng: Rng) -> None:
    """Dig corridors so every room is reachable from every other.

    Rooms are joined Prim-style: each unconnected room links to the nearest
    already-connected one.  Raises CompileError("corridor connection failed")
    on failure; the compiler retries with a fresh layout.
    """
    if len(rooms) <= 1:
        return
    connected = [rooms[0]]
    pending = list(rooms[1:])
    while pending:
        best = None
        for p in pending:
            for c in connected:
                d = abs((p.x + p.w // 2) - (c.x + c.w // 2)) + \
                    abs((p.y + p.h // 2) - (c.y + c.h // 2))
                if best is None or d < best[0]:
                    best = (d, p, c)
        _, room, anchor = best
        if not _connect_pair(terrain, width, height, rooms, anchor, room, rng):
            raise CompileError("corridor connection failed")
        pending.remove(room)
        connected.append(room)
    if not _reachable_all(terrain, width, height, rooms):
        raise CompileError("corridor connection failed")
