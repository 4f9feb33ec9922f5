"""Cell-set selections: fillrect, randline, filter, union, rndcoord.

Selections are ordered, duplicate-free lists of canvas (x, y) tuples; ordering
is part of the deterministic contract (rndcoord indexes into it).
"""

from __future__ import annotations

from ..rng import Rng

_MAX_SPLIT_DEPTH = 16


def sel_fillrect(x1: int, y1: int, x2: int, y2: int, width: int, height: int) -> list:
    xa, xb = sorted((x1, x2))
    ya, yb = sorted((y1, y2))
    xa = max(xa, 0)
    ya = max(ya, 0)
    xb = min(xb, width - 1)
    yb = min(yb, height - 1)
    return [(x, y) for y in range(ya, yb + 1) for x in range(xa, xb + 1)]


def _bresenham(x0: int, y0: int, x1: int, y1: int) -> list:
    cells = []
    dx = abs(x1 - x0)
    dy = abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx - dy
    x, y = x0, y0
    while True:
        cells.append((x, y))
        if x == x1 and y == y1:
            return cells
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x += sx
        if e2 < dx:
            err += dx
            y += sy


def _clamp(v: int, lo: int, hi: int) -> int:
    return lo if v < lo else hi if v > hi else v


def _split(p1, p2, roughness, rng, width, height, depth, out) -> None:
    # recursive midpoint displacement; jitter is perpendicular to the segment,
    # capped by the segment length and halved per level so the wander stays
    # proportional to the requested roughness
    x1, y1 = p1
    x2, y2 = p2
    seg = max(abs(x2 - x1), abs(y2 - y1))
    if depth >= _MAX_SPLIT_DEPTH or seg <= 1:
        out.append(p2)
        return
    dx = x2 - x1
    dy = y2 - y1
    r = min(roughness, seg)
    j = rng.randint(-r, r) if r > 0 else 0
    mx = _clamp((x1 + x2) // 2 + (j * -dy) // seg, 0, width - 1)
    my = _clamp((y1 + y2) // 2 + (j * dx) // seg, 0, height - 1)
    mid = (mx, my)
    if mid == p1 or mid == p2:
        out.append(p2)
        return
    _split(p1, mid, roughness // 2, rng, width, height, depth + 1, out)
    _split(mid, p2, roughness // 2, rng, width, height, depth + 1, out)


def select_randline(p1, p2, roughness: int, rng: Rng,
                    width: int = 79, height: int = 21) -> list:
    """Random-walk line between two cells: an 8-connected cell set containing
    both endpoints."""
    p1 = (_clamp(p1[0], 0, width - 1), _clamp(p1[1], 0, height - 1))
    p2 = (_clamp(p2[0], 0, width - 1), _clamp(p2[1], 0, height - 1))
    points = [p1]
    _split(p1, p2, roughness, rng, width, height, 0, points)
    cells: list = []
    seen = set()
    prev = points[0]
    for nxt in points[1:]:
        for c in _bresenham(prev[0], prev[1], nxt[0], nxt[1]):
            if c not in seen:
                seen.add(c)
                cells.append(c)
        prev = nxt
    return cells


def sel_filter(percent: int, cells: list, rng: Rng) -> list:
    """Keep each cell independently with probability percent/100."""
    return [c for c in cells if rng.chance(percent)]


def sel_union(parts: list) -> list:
    out: list = []
    seen = set()
    for part in parts:
        for c in part:
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def rndcoord(cells: list, rng: Rng):
    if not cells:
        return None
    return cells[rng.randrange(len(cells))]
