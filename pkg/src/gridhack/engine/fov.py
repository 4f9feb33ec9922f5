"""Line of sight and field of view.

Visibility rule: a cell is visible iff it is within Chebyshev distance 1 of
the viewer, or it is lit and an unobstructed sight line connects it to the
viewer.  Sight lines are symmetric: a Bresenham ray is traced from each
endpoint and the pair counts as clear if either trace is unobstructed, so
visible(a, b) == visible(b, a) always holds.
"""

from __future__ import annotations

from ..terrain import OPAQUE

WIDTH = 79
HEIGHT = 21


def _ray_clear(terrain: bytearray, x0: int, y0: int, x1: int, y1: int) -> bool:
    """True if no opaque cell lies strictly between the endpoints along the
    Bresenham line traced from (x0, y0)."""
    dx = abs(x1 - x0)
    dy = abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx - dy
    x, y = x0, y0
    while True:
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x += sx
        if e2 < dx:
            err += dx
            y += sy
        if x == x1 and y == y1:
            return True
        if OPAQUE[terrain[y * WIDTH + x]]:
            return False


def line_of_sight(terrain: bytearray, x0: int, y0: int, x1: int, y1: int) -> bool:
    """Symmetric line of sight between two cells."""
    if max(abs(x1 - x0), abs(y1 - y0)) <= 1:
        return True
    return (_ray_clear(terrain, x0, y0, x1, y1)
            or _ray_clear(terrain, x1, y1, x0, y0))


def compute_visible(terrain: bytearray, lit_cells: tuple, ax: int, ay: int) -> frozenset:
    """Indices (y*79+x) of all cells visible from the agent position.

    lit_cells is the static tuple of lit cell indices for the level.
    """
    visible = set()
    for dy in (-1, 0, 1):
        ny = ay + dy
        if not 0 <= ny < HEIGHT:
            continue
        for dx in (-1, 0, 1):
            nx = ax + dx
            if 0 <= nx < WIDTH:
                visible.add(ny * WIDTH + nx)
    for idx in lit_cells:
        if idx in visible:
            continue
        cx = idx % WIDTH
        cy = idx // WIDTH
        if line_of_sight(terrain, ax, ay, cx, cy):
            visible.add(idx)
    return frozenset(visible)


class FovCache:
    """Memoizes visibility per (agent index, terrain version).

    Terrain edits (doors opening, bridges, ice) bump the version and naturally
    invalidate stale entries; identical frozensets are interned so repeated
    positions share one object.
    """

    def __init__(self, terrain: bytearray, lit: bytes):
        self.terrain = terrain
        self.lit_bytes = bytes(lit)
        self.lit_cells = tuple(i for i, v in enumerate(lit) if v)
        self.version = 0
        self._memo: dict = {}
        self._intern: dict = {}

    def invalidate(self) -> None:
        self.version += 1
        if len(self._memo) > 4096:
            self._memo.clear()

    def visible_from(self, ax: int, ay: int) -> frozenset:
        key = (ax, ay, self.version)
        vis = self._memo.get(key)
        if vis is None:
            vis = compute_visible(self.terrain, self.lit_cells, ax, ay)
            vis = self._intern.setdefault(vis, vis)
            self._memo[key] = vis
        return vis
