"""Programmatic construction of level source text.

``LevelBuilder`` collects directives and emits DSL text via :meth:`get_des`,
so hand-written files and generated environments share one compile path.
Coordinates are map-local; ``None`` places mean random placement.
"""

from __future__ import annotations

from .catalog import get_catalog
from .dsl import parse_document
from .errors import GridhackError


class OutOfBounds(GridhackError):
    pass


def _fmt_coord(place) -> str:
    if place is None:
        return "random"
    x, y = place
    return f"({int(x)},{int(y)})"


class LevelBuilder:
    """Accumulates level directives and emits parseable source text."""

    def __init__(self, w: int = 8, h: int = 8, map_text: str | None = None,
                 name: str = "mylevel", lit: bool = True, flags: tuple = ()):
        self.name = name
        self.lit = lit
        self.flags = tuple(flags)
        if map_text is not None:
            rows = [r for r in map_text.split("\n")]
            while rows and not rows[0].strip():
                rows.pop(0)
            while rows and not rows[-1].strip():
                rows.pop()
            self.rows = rows
            self.width = max((len(r) for r in rows), default=0)
            self.height = len(rows)
        else:
            self.rows = ["." * w for _ in range(h)]
            self.width = w
            self.height = h
        self.lines: list[str] = []

    @classmethod
    def new(cls, w: int, h: int, **kw) -> "LevelBuilder":
        return cls(w=w, h=h, **kw)

    @classmethod
    def from_map(cls, map_text: str, **kw) -> "LevelBuilder":
        return cls(map_text=map_text, **kw)

    # ------------------------------------------------------------------

    def _check(self, place) -> None:
        if place is None:
            return
        x, y = int(place[0]), int(place[1])
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise OutOfBounds(f"coordinate ({x},{y}) outside "
                              f"{self.width}x{self.height} map")

    def add_object(self, name: str | None = None, symbol: str | None = None,
                   place=None, quantity: int | None = None) -> "LevelBuilder":
        self._check(place)
        cat = get_catalog()
        if name is None:
            spec = "random"
        else:
            if symbol is None:
                symbol = cat.object(name).char
            spec = f"('{symbol}',\"{name}\")"
        extra = f", {int(quantity)}" if quantity is not None else ""
        self.lines.append(f"OBJECT: {spec}, {_fmt_coord(place)}{extra}")
        return self

    def add_monster(self, name: str | None = None, place=None,
                    args: tuple = ()) -> "LevelBuilder":
        self._check(place)
        cat = get_catalog()
        if name is None:
            spec = "random"
        elif len(name) == 1:
            spec = f"'{name}'"
        else:
            spec = f"('{cat.monster(name).char}',\"{name}\")"
        extra = "".join(f", {a}" for a in args)
        self.lines.append(f"MONSTER: {spec}, {_fmt_coord(place)}{extra}")
        return self

    def add_trap(self, name: str | None = None, place=None) -> "LevelBuilder":
        self._check(place)
        spec = "random" if name is None else f'"{name}"'
        self.lines.append(f"TRAP: {spec}, {_fmt_coord(place)}")
        return self

    def add_sink(self, place=None) -> "LevelBuilder":
        self._check(place)
        self.lines.append(f"SINK: {_fmt_coord(place)}")
        return self

    def add_fountain(self, place=None) -> "LevelBuilder":
        self._check(place)
        self.lines.append(f"FOUNTAIN: {_fmt_coord(place)}")
        return self

    def add_altar(self, place=None) -> "LevelBuilder":
        self._check(place)
        self.lines.append(f"ALTAR: {_fmt_coord(place)}")
        return self

    def add_door(self, state: str = "closed", place=None) -> "LevelBuilder":
        self._check(place)
        self.lines.append(f"DOOR: {state}, {_fmt_coord(place)}")
        return self

    def add_stair_up(self, place=None) -> "LevelBuilder":
        self._check(place)
        self.lines.append(f"STAIR: {_fmt_coord(place)}, up")
        return self

    def add_goal_pos(self, place=None) -> "LevelBuilder":
        """A goal is a down staircase."""
        self._check(place)
        self.lines.append(f"STAIR: {_fmt_coord(place)}, down")
        return self

    add_stair_down = add_goal_pos

    def set_start_pos(self, place) -> "LevelBuilder":
        self._check(place)
        x, y = int(place[0]), int(place[1])
        self.lines.append(f"BRANCH: ({x},{y},{x},{y}), (0,0,0,0)")
        return self

    def set_start_rect(self, p1, p2) -> "LevelBuilder":
        self._check(p1)
        self._check(p2)
        x1, y1 = int(p1[0]), int(p1[1])
        x2, y2 = int(p2[0]), int(p2[1])
        self.lines.append(f"BRANCH: ({x1},{y1},{x2},{y2}), (0,0,0,0)")
        return self

    def add_mazewalk(self, place, direction: str = "east") -> "LevelBuilder":
        self._check(place)
        self.lines.append(f"MAZEWALK: {_fmt_coord(place)}, {direction}")
        return self

    def fill_terrain(self, shape: str, char: str, x1: int, y1: int,
                     x2: int | None = None, y2: int | None = None) -> "LevelBuilder":
        if x2 is None or y2 is None:
            x2, y2 = x1, y1
        for p in ((x1, y1), (x2, y2)):
            self._check(p)
        if shape == "fillrect":
            self.lines.append(f"TERRAIN: fillrect ({x1},{y1},{x2},{y2}), '{char}'")
        elif shape == "rect":
            # outline: two row strips plus the two side columns
            self.lines.append(f"TERRAIN: fillrect ({x1},{y1},{x2},{y1}), '{char}'")
            self.lines.append(f"TERRAIN: fillrect ({x1},{y2},{x2},{y2}), '{char}'")
            self.lines.append(f"TERRAIN: fillrect ({x1},{y1},{x1},{y2}), '{char}'")
            self.lines.append(f"TERRAIN: fillrect ({x2},{y1},{x2},{y2}), '{char}'")
        elif shape == "line":
            self.lines.append(
                f"TERRAIN: randline ({x1},{y1}),({x2},{y2}), 0, '{char}'")
        else:
            raise GridhackError(f"unknown fill_terrain shape: {shape}")
        return self

    def add_line(self, text: str) -> "LevelBuilder":
        """Escape hatch: append one raw directive line."""
        self.lines.append(text)
        return self

    # ------------------------------------------------------------------

    def get_des(self) -> str:
        out = [f'MAZE: "{self.name}", \' \'']
        if self.flags:
            out.append("FLAGS: " + ", ".join(self.flags))
        out.append("GEOMETRY: center, center")
        out.append("MAP")
        out.extend(self.rows)
        out.append("ENDMAP")
        lit = "lit" if self.lit else "unlit"
        out.append(f"REGION: (0,0,{self.width - 1},{self.height - 1}), "
                   f"{lit}, \"ordinary\"")
        out.extend(self.lines)
        text = "\n".join(out) + "\n"
        parse_document(text)  # emitted source must always parse
        return text
