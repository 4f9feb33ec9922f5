"""MultiRoom tasks: chains of connected rooms with optional hazards."""

from __future__ import annotations

from ..rng import Rng, derive_seed, text_salt
from .registry import DIR_ACTIONS, NAV_ACTIONS, EnvSpec, register

_MULTIROOM_ACTIONS = NAV_ACTIONS + ("open", "kick") + DIR_ACTIONS


def gen_multiroom(n_rooms: int, room_size: int = 5, variant: str | None = None):
    """Return a seed -> des text generator for a linear chain of rooms.

    variant: None (plain), "monster" (one random hostile monster per room
    after the first), "locked" (doors locked instead of closed), "lava"
    (room walls made of lava), "extreme" (all of the above).
    """
    if n_rooms not in (2, 4, 6):
        raise ValueError("n_rooms must be 2, 4 or 6")
    if not 2 <= room_size <= 5:
        raise ValueError("room_size must be in 2..5")
    if variant not in (None, "monster", "locked", "lava", "extreme"):
        raise ValueError("unknown variant %r" % (variant,))
    monsters = variant in ("monster", "extreme")
    locked = variant in ("locked", "extreme")
    lava = variant in ("lava", "extreme")
    tag = "multiroom:%d:%d:%s" % (n_rooms, room_size, variant or "plain")

    def gen(seed: int) -> str:
        rng = Rng(derive_seed(seed, text_salt("task:" + tag)))
        height = room_size + 5
        # interior top-left corners and sizes, chained left to right with a
        # shared wall column between neighbours
        rooms = []
        x = 1
        for i in range(n_rooms):
            w = rng.randint(2, room_size)
            h = rng.randint(2, room_size)
            if i == 0:
                y = rng.randint(1, height - h - 1)
            else:
                # interiors of neighbours must overlap in at least one row
                py, ph = rooms[-1][1], rooms[-1][3]
                lo = max(1, py - h + 1)
                hi = min(height - h - 1, py + ph - 1)
                y = rng.randint(lo, hi)
            rooms.append((x, y, w, h))
            x += w + 1
        width = x + 1

        grid = [[" "] * width for _ in range(height)]
        wall_v = "L" if lava else "|"
        wall_h = "L" if lava else "-"
        for rx, ry, rw, rh in rooms:
            for gx in range(rx - 1, rx + rw + 1):
                grid[ry - 1][gx] = wall_h
                grid[ry + rh][gx] = wall_h
            for gy in range(ry, ry + rh):
                grid[gy][rx - 1] = wall_v
                grid[gy][rx + rw] = wall_v
            for gy in range(ry, ry + rh):
                for gx in range(rx, rx + rw):
                    grid[gy][gx] = "."

        extra = []
        state = "locked" if locked else "closed"
        for a, b in zip(rooms, rooms[1:]):
            door_x = b[0] - 1
            lo = max(a[1], b[1])
            hi = min(a[1] + a[3], b[1] + b[3]) - 1
            extra.append("DOOR: %s, (%d,%d)" % (state, door_x,
                                                rng.randint(lo, hi)))

        fx, fy, fw, fh = rooms[0]
        extra.append("BRANCH: (%d,%d,%d,%d), (0,0,0,0)"
                     % (fx, fy, fx + fw - 1, fy + fh - 1))
        lx, ly, lw, lh = rooms[-1]
        sx = rng.randint(lx, lx + lw - 1)
        sy = rng.randint(ly, ly + lh - 1)
        extra.append("STAIR: (%d,%d), down" % (sx, sy))
        if monsters:
            for rx, ry, rw, rh in rooms[1:]:
                for _ in range(50):
                    mx = rng.randint(rx, rx + rw - 1)
                    my = rng.randint(ry, ry + rh - 1)
                    if (mx, my) != (sx, sy):
                        break
                extra.append("MONSTER: random, (%d,%d), hostile" % (mx, my))

        out = ["MAZE: \"mylevel\", ' '", "GEOMETRY: center, center", "MAP"]
        out.extend("".join(row).rstrip() or " " for row in grid)
        out.append("ENDMAP")
        out.append('REGION: (0,0,%d,%d), lit, "ordinary"'
                   % (width - 1, height - 1))
        out.extend(extra)
        return "\n".join(out) + "\n"

    return gen


def _register_multiroom() -> None:
    for n in (2, 4):
        for suffix, variant in (("", None), ("-Monster", "monster"),
                                ("-Locked", "locked"), ("-Lava", "lava"),
                                ("-Extreme", "extreme")):
            register(EnvSpec(
                "MultiRoom-N%d%s" % (n, suffix),
                des=gen_multiroom(n, 5, variant),
                actions=_MULTIROOM_ACTIONS,
                max_steps=120 * n,
                require=("stair down",)))


_register_multiroom()
