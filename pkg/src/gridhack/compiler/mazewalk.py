"""Maze carving over a fill region (recursive backtracker on an odd lattice)."""

from __future__ import annotations

from collections import deque

from ..errors import CompileError
from ..rng import Rng
from ..terrain import Terrain

_DIR_STEPS = {
    "north": (0, -1),
    "south": (0, 1),
    "east": (1, 0),
    "west": (-1, 0),
}


def _fill_region(terrain: bytearray, width: int, height: int,
                 entry, fill_code: int) -> set:
    ex, ey = entry
    region = {entry}
    queue = deque([entry])
    while queue:
        x, y = queue.popleft()
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= nx < width and 0 <= ny < height and (nx, ny) not in region \
                    and terrain[ny * width + nx] == fill_code:
                region.add((nx, ny))
                queue.append((nx, ny))
    return region


def mazewalk(terrain: bytearray, width: int, height: int, entry,
             direction: str, rng: Rng,
             fill_code: int = Terrain.SOLID) -> list:
    """Carve a perfect maze over the fill region containing entry.

    Corridor cells become floor on the odd lattice of the region's bounding
    box; walls one cell thick.  Returns the carved cells.  The maze is a
    spanning tree of the lattice, so every carved cell is reachable from the
    entry and there are no loops.
    """
    ex, ey = entry
    if not (0 <= ex < width and 0 <= ey < height):
        raise CompileError("MAZEWALK entry out of bounds: (%d,%d)" % (ex, ey))
    if terrain[ey * width + ex] != fill_code:
        raise CompileError("MAZEWALK entry not on the fill region: (%d,%d)" % (ex, ey))
    region = _fill_region(terrain, width, height, entry, fill_code)
    xs = [c[0] for c in region]
    ys = [c[1] for c in region]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 - x0 + 1 < 3 or y1 - y0 + 1 < 3:
        raise CompileError("MAZEWALK region too small: %dx%d, need at least 3x3"
                           % (x1 - x0 + 1, y1 - y0 + 1))

    def is_node(x: int, y: int) -> bool:
        return (x - x0) % 2 == 1 and (y - y0) % 2 == 1 and x < x1 and y < y1

    # start at the lattice node nearest the entry (ties: smaller y, then x)
    nodes = sorted((c for c in region if is_node(c[0], c[1])),
                   key=lambda c: (max(abs(c[0] - ex), abs(c[1] - ey)), c[1], c[0]))
    if not nodes:
        raise CompileError("MAZEWALK region has no interior lattice cell")
    start = nodes[0]

    carved = []

    def carve(x: int, y: int) -> None:
        terrain[y * width + x] = Terrain.FLOOR
        carved.append((x, y))

    visited = {start}
    carve(*start)
    stack = [start]
    first_step = True
    while stack:
        cx, cy = stack[-1]
        cands = []
        for dx, dy in ((0, -1), (1, 0), (0, 1), (-1, 0)):
            nx, ny = cx + 2 * dx, cy + 2 * dy
            if (nx, ny) in region and (nx, ny) not in visited \
                    and (cx + dx, cy + dy) in region and is_node(nx, ny):
                cands.append((dx, dy, nx, ny))
        if not cands:
            stack.pop()
            continue
        rng.shuffle(cands)
        if first_step:
            pref = _DIR_STEPS[direction]
            for i, c in enumerate(cands):
                if (c[0], c[1]) == pref:
                    cands[0], cands[i] = cands[i], cands[0]
                    break
            first_step = False
        dx, dy, nx, ny = cands[0]
        carve(cx + dx, cy + dy)
        carve(nx, ny)
        visited.add((nx, ny))
        stack.append((nx, ny))

    # connect the entry to the maze with a straight L-path inside the region
    if entry != start:
        path = []
        x, y = entry
        sx, sy = start
        while x != sx:
            path.append((x, y))
            x += 1 if sx > x else -1
        while y != sy:
            path.append((x, y))
            y += 1 if sy > y else -1
        for cell in path:
            if cell in region and terrain[cell[1] * width + cell[0]] == fill_code:
                carve(*cell)
    return carved
