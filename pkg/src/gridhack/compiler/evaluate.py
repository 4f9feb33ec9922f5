"""Seeded evaluation of a parsed des document into a concrete level.

compile_document(source, level_name, seed) is a pure function: the same
(document, level, seed) triple always yields the same blueprint, byte for
byte, on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..blueprint import CANVAS_HEIGHT, CANVAS_WIDTH, LevelBlueprint, Placement
from ..catalog import Catalog, MonsterDef, ObjectDef, get_catalog
from ..dsl import ast as A
from ..dsl.parser import parse_document
from ..errors import CompileError, PlacementError, UnknownEntityError
from ..rng import Rng, derive_seed, text_salt
from ..terrain import DES_CHARS, SPAWNABLE, Terrain, WALKABLE
from .mazewalk import mazewalk
from .rooms import (PlacedRoom, _boxes_clash, carve_room, punch_opening,
                    random_corridors, random_room_size, room_slot, wall_cells)
from .selections import (rndcoord, sel_fillrect, sel_filter, sel_union,
                         select_randline)

PLACE_ATTEMPTS = 1000
LAYOUT_RETRIES = 100

TRAP_NAMES = ("teleport", "invisible", "fire")
RANDOM_TRAPS = ("teleport", "fire")

_DOOR_STATES = {
    "nodoor": Terrain.FLOOR,
    "open": Terrain.OPEN_DOOR,
    "closed": Terrain.CLOSED_DOOR,
    "locked": Terrain.LOCKED_DOOR,
}

_SELECTION_NODES = (A.FillRect, A.RandLine, A.FilterSel, A.UnionSel)


class LayoutFailure(CompileError):
    """Room placement or corridor digging failed; the whole layout is
    resampled with fresh randomness, up to LAYOUT_RETRIES times."""


class CanvasCoord(tuple):
    """A coordinate already in canvas space (no frame offset to apply)."""


class Selection(list):
    """An ordered list of canvas cells produced by a selection expression."""


class TaggedList(list):
    """An array variable; keeps its declaration tag for error messages."""

    def __init__(self, items, tag=None):
        super().__init__(items)
        self.tag = tag


@dataclass
class EvalContext:
    """Mutable evaluation state: bound variables plus the random stream."""
    rng: Rng
    variables: dict = field(default_factory=dict)


def _span_err(msg: str, span) -> CompileError:
    return CompileError(msg, span.line, span.column)


# -- expression evaluation --------------------------------------------------

def roll_dice(n: int, m: int, rng: Rng) -> int:
    if n < 1 or m < 1:
        raise CompileError("dice roll needs at least 1 die with 1 side, got %dd%d" % (n, m))
    return rng.roll(n, m)


def eval_int_expr(expr, ctx: EvalContext) -> int:
    if isinstance(expr, A.IntLit):
        return expr.value
    if isinstance(expr, A.DiceRoll):
        return roll_dice(expr.count, expr.sides, ctx.rng)
    if isinstance(expr, A.VarRef):
        v = lookup_var(expr.name, ctx, expr.span)
        if not isinstance(v, int):
            raise _span_err("$%s is not an integer" % expr.name, expr.span)
        return v
    if isinstance(expr, A.IndexedVar):
        v = index_var(expr, ctx)
        if not isinstance(v, int):
            raise _span_err("$%s[...] is not an integer" % expr.name, expr.span)
        return v
    if isinstance(expr, A.BinOp):
        lhs = eval_int_expr(expr.lhs, ctx)
        rhs = eval_int_expr(expr.rhs, ctx)
        if expr.op == "+":
            return lhs + rhs
        if expr.op == "-":
            return lhs - rhs
        if expr.op == "*":
            return lhs * rhs
        if expr.op == "/":
            if rhs == 0:
                raise _span_err("division by zero", expr.span)
            return lhs // rhs
        raise _span_err("unknown operator %r" % expr.op, expr.span)
    raise CompileError("not an integer expression: %r" % (expr,))


def lookup_var(name: str, ctx: EvalContext, span=None):
    try:
        return ctx.variables[name]
    except KeyError:
        if span is not None:
            raise _span_err("unbound variable $%s" % name, span) from None
        raise CompileError("unbound variable $%s" % name) from None


def index_var(expr: A.IndexedVar, ctx: EvalContext):
    seq = lookup_var(expr.name, ctx, expr.span)
    if not isinstance(seq, list):
        raise _span_err("$%s is not an array" % expr.name, expr.span)
    idx = eval_int_expr(expr.index, ctx)
    if not 0 <= idx < len(seq):
        raise _span_err("index %d out of range for $%s (length %d)"
                        % (idx, expr.name, len(seq)), expr.span)
    return seq[idx]


def eval_condition(cond, ctx: EvalContext) -> bool:
    if isinstance(cond, A.PercentCond):
        return ctx.rng.chance(cond.percent)
    if isinstance(cond, A.CompareCond):
        lhs = eval_int_expr(cond.lhs, ctx)
        rhs = eval_int_expr(cond.rhs, ctx)
        return {
            "<": lhs < rhs, "<=": lhs <= rhs, ">": lhs > rhs,
            ">=": lhs >= rhs, "==": lhs == rhs, "!=": lhs != rhs,
        }[cond.op]
    raise CompileError("not a condition: %r" % (cond,))


def replace_terrain(terrain: bytearray, width: int, height: int, rect,
                    from_code: int, to_code: int, percent: int,
                    rng: Rng) -> None:
    x1, y1, x2, y2 = rect
    x1 = max(x1, 0)
    y1 = max(y1, 0)
    x2 = min(x2, width - 1)
    y2 = min(y2, height - 1)
    for y in range(y1, y2 + 1):
        base = y * width
        for x in range(x1, x2 + 1):
            if terrain[base + x] == from_code and rng.chance(percent):
                terrain[base + x] = to_code


# -- entity resolution ------------------------------------------------------

def resolve_monster(spec: A.EntitySpec, rng: Rng, catalog: Catalog,
                    ctx: EvalContext) -> MonsterDef:
    if spec.random:
        return rng.choice(catalog.monsters)
    char, name = _spec_parts(spec, ctx)
    if name is not None:
        mdef = catalog.monster(name)
        if char is not None and mdef.char != char:
            raise _span_err("monster %r is not in class %r" % (name, char), spec.span)
        return mdef
    return rng.choice(catalog.monster_class(char))


def resolve_object(spec: A.EntitySpec, rng: Rng, catalog: Catalog,
                   ctx: EvalContext) -> ObjectDef:
    if spec.random:
        return rng.choice(catalog.random_objects)
    char, name = _spec_parts(spec, ctx)
    if name is not None:
        return catalog.object(name, char)
    return rng.choice(catalog.object_class(char))


def _spec_parts(spec: A.EntitySpec, ctx: EvalContext):
    """Resolve the char/name slots; a one-char string is a class char, a
    longer one a name (variables can hold either)."""
    char = name = None
    for part in (spec.char, spec.name):
        if part is None:
            continue
        if isinstance(part, A.VarRef):
            v = lookup_var(part.name, ctx, part.span)
        elif isinstance(part, A.IndexedVar):
            v = index_var(part, ctx)
        else:
            v = part
        if not isinstance(v, str):
            raise _span_err("entity spec must be a char or name, got %r" % (v,),
                            spec.span)
        if len(v) == 1:
            char = v
        else:
            name = v
    if char is None and name is None:
        raise _span_err("empty entity specification", spec.span)
    return char, name


# -- the evaluator ----------------------------------------------------------

class _Evaluator:
    def __init__(self, level: A.LevelDecl, rng: Rng, catalog: Catalog):
        self.level = level
        self.rng = rng
        self.catalog = catalog
        self.ctx = EvalContext(rng=rng)
        self.width = CANVAS_WIDTH
        self.height = CANVAS_HEIGHT
        if level.kind == A.MAZE_TYPE:
            self.fill_code = self._terrain_code(level.fill, level.span)
        else:
            self.fill_code = Terrain.SOLID
        self.bp = LevelBlueprint(name=level.name)
        if self.fill_code != Terrain.SOLID:
            for i in range(len(self.bp.terrain)):
                self.bp.terrain[i] = self.fill_code
        self.origin = (0, 0)
        self.geometry = ("center", "center")
        self.rooms: list[PlacedRoom] = []
        self.room_stack: list[PlacedRoom] = []
        self.sub_boxes: dict[int, list] = {}
        self.occupied: set = set()
        self.map_placed = False

    # -- helpers ------------------------------------------------------------

    def _terrain_code(self, ch: str, span) -> int:
        code = DES_CHARS.get(ch)
        if code is None:
            raise _span_err("unknown terrain character %r" % ch, span)
        return code

    def to_canvas(self, x: int, y: int) -> tuple:
        if self.room_stack:
            r = self.room_stack[-1]
            return r.x + x, r.y + y
        ox, oy = self.origin
        return ox + x, oy + y

    def canvas_rect(self, rect: A.Rect) -> tuple:
        x1, y1 = self.to_canvas(rect.x1, rect.y1)
        x2, y2 = self.to_canvas(rect.x2, rect.y2)
        return x1, y1, x2, y2

    def eval_int(self, expr) -> int:
        return eval_int_expr(expr, self.ctx)

    def set_terrain(self, x: int, y: int, code: int) -> None:
        self.bp.terrain[y * self.width + x] = code

    def terrain_at(self, x: int, y: int) -> int:
        return self.bp.terrain[y * self.width + x]

    def _random_cell(self, span) -> tuple:
        """A random spawnable, unoccupied cell in the current frame."""
        if self.room_stack:
            r = self.room_stack[-1]
            x0, y0, x1, y1 = r.x, r.y, r.x + r.w - 1, r.y + r.h - 1
        else:
            x0, y0, x1, y1 = 0, 0, self.width - 1, self.height - 1
        rng = self.rng
        for _ in range(PLACE_ATTEMPTS):
            x = rng.randint(x0, x1)
            y = rng.randint(y0, y1)
            if SPAWNABLE[self.terrain_at(x, y)] and (x, y) not in self.occupied:
                return x, y
        # rejection sampling starved (tiny or crowded frame): scan for the
        # free cells explicitly so scarcity stays deterministic, not fatal
        free = [(x, y)
                for y in range(y0, y1 + 1)
                for x in range(x0, x1 + 1)
                if SPAWNABLE[self.terrain_at(x, y)] and (x, y) not in self.occupied]
        if free:
            return free[rng.randrange(len(free))]
        raise PlacementError("no free cell for a random placement after %d attempts"
                             % PLACE_ATTEMPTS, span.line, span.column)

    def resolve_place(self, place, span) -> tuple:
        if isinstance(place, A.Coord):
            pos = self.to_canvas(place.x, place.y)
        elif isinstance(place, A.RandomArg):
            return self._random_cell(span)
        elif isinstance(place, A.RndCoord):
            cells = self.eval_selection(place.source)
            if not cells:
                raise _span_err("rndcoord over an empty selection", span)
            return tuple(rndcoord(cells, self.rng))
        elif isinstance(place, (A.VarRef, A.IndexedVar)):
            v = index_var(place, self.ctx) if isinstance(place, A.IndexedVar) \
                else lookup_var(place.name, self.ctx, span)
            if isinstance(v, CanvasCoord):
                pos = tuple(v)
            elif isinstance(v, tuple) and len(v) == 2:
                pos = self.to_canvas(v[0], v[1])
            else:
                raise _span_err("variable does not hold a coordinate", span)
        else:
            raise _span_err("expected a position", span)
        if not self.bp.in_bounds(*pos):
            raise _span_err("coordinate (%d,%d) out of bounds" % pos, span)
        return pos

    def eval_selection(self, node) -> list:
        if isinstance(node, A.FillRect):
            x1, y1 = self.to_canvas(node.x1, node.y1)
            x2, y2 = self.to_canvas(node.x2, node.y2)
            return sel_fillrect(x1, y1, x2, y2, self.width, self.height)
        if isinstance(node, A.RandLine):
            p1 = self.to_canvas(node.x1, node.y1)
            p2 = self.to_canvas(node.x2, node.y2)
            return select_randline(p1, p2, node.roughness, self.rng,
                                   self.width, self.height)
        if isinstance(node, A.FilterSel):
            return sel_filter(node.percent, self.eval_selection(node.inner), self.rng)
        if isinstance(node, A.UnionSel):
            return sel_union([self.eval_selection(p) for p in node.parts])
        if isinstance(node, A.VarRef):
            v = lookup_var(node.name, self.ctx, node.span)
            if not isinstance(v, Selection):
                raise _span_err("$%s is not a selection" % node.name, node.span)
            return list(v)
        raise CompileError("not a selection expression: %r" % (node,))

    def add_placement(self, kind: str, name: str, char: str, pos,
                      hostile: bool = True, asleep: bool = False,
                      quantity: int = 1, montype: str = "") -> None:
        self.bp.placements.append(Placement(
            kind=kind, name=name, char=char, x=pos[0], y=pos[1],
            hostile=hostile, asleep=asleep, quantity=quantity, montype=montype))
        self.occupied.add((pos[0], pos[1]))

    # -- command dispatch ----------------------------------------------------

    def run(self) -> LevelBlueprint:
        for cmd in self.level.commands:
            self.eval_command(cmd)
        return self.bp

    def eval_command(self, cmd) -> None:
        handler = self._HANDLERS.get(type(cmd))
        if handler is None:
            raise CompileError("cannot evaluate %s" % type(cmd).__name__,
                               cmd.span.line, cmd.span.column)
        handler(self, cmd)

    def _cmd_map(self, cmd: A.MapBlock) -> None:
        if self.map_placed:
            raise _span_err("duplicate MAP block", cmd.span)
        rows = cmd.rows
        h = len(rows)
        w = max(len(r) for r in rows)
        if w > self.width or h > self.height:
            raise _span_err("MAP block %dx%d exceeds the %dx%d canvas"
                            % (w, h, self.width, self.height), cmd.span)
        ha, va = self.geometry
        ox = {"left": 0, "half-left": (self.width - w) // 4,
              "center": (self.width - w) // 2,
              "half-right": 3 * (self.width - w) // 4,
              "right": self.width - w}[ha]
        oy = {"top": 0, "center": (self.height - h) // 2,
              "bottom": self.height - h}[va]
        for y, row in enumerate(rows):
            for x in range(w):
                ch = row[x] if x < len(row) else " "
                code = DES_CHARS.get(ch)
                if code is None:
                    raise CompileError("unknown map character %r" % ch,
                                       cmd.span.line + 1 + y, x + 1)
                self.set_terrain(ox + x, oy + y, code)
        self.origin = (ox, oy)
        self.map_placed = True

    def _cmd_geometry(self, cmd: A.GeometryCmd) -> None:
        self.geometry = (cmd.halign, cmd.valign)

    def _cmd_flags(self, cmd: A.FlagsCmd) -> None:
        # only premapped changes engine behavior; other flags are accepted
        # by the grammar but have no effect here
        if "premapped" in cmd.flags:
            self.bp.premapped = True

    def _cmd_region(self, cmd: A.RegionCmd) -> None:
        lit = {"lit": True, "unlit": False}.get(cmd.lit)
        if lit is None:
            lit = self.rng.chance(50)
        x1, y1, x2, y2 = self.canvas_rect(cmd.rect)
        x1 = max(x1, 0)
        y1 = max(y1, 0)
        x2 = min(x2, self.width - 1)
        y2 = min(y2, self.height - 1)
        for y in range(y1, y2 + 1):
            base = y * self.width
            for x in range(x1, x2 + 1):
                self.bp.lit[base + x] = 1 if lit else 0

    def _cmd_terrain(self, cmd: A.TerrainCmd) -> None:
        code = self._char_value(cmd.char)
        if isinstance(cmd.target, _SELECTION_NODES) or (
                isinstance(cmd.target, A.VarRef)
                and isinstance(self.ctx.variables.get(cmd.target.name), Selection)):
            for x, y in self.eval_selection(cmd.target):
                self.set_terrain(x, y, code)
        else:
            x, y = self.resolve_place(cmd.target, cmd.span)
            self.set_terrain(x, y, code)

    def _char_value(self, node) -> int:
        if isinstance(node, A.CharLit):
            ch = node.value
        else:
            v = index_var(node, self.ctx) if isinstance(node, A.IndexedVar) \
                else lookup_var(node.name, self.ctx, node.span)
            if not isinstance(v, str) or len(v) != 1:
                raise _span_err("expected a terrain character", node.span)
            ch = v
        return self._terrain_code(ch, node.span)

    def _cmd_replace(self, cmd: A.ReplaceTerrainCmd) -> None:
        pct = self.eval_int(cmd.percent)
        if not 0 <= pct <= 100:
            raise _span_err("percent must be 0..100, got %d" % pct, cmd.span)
        replace_terrain(self.bp.terrain, self.width, self.height,
                        self.canvas_rect(cmd.rect),
                        self._terrain_code(cmd.from_char, cmd.span),
                        self._terrain_code(cmd.to_char, cmd.span),
                        pct, self.rng)

    def _cmd_mazewalk(self, cmd: A.MazewalkCmd) -> None:
        pos = self.resolve_place(cmd.coord, cmd.span)
        mazewalk(self.bp.terrain, self.width, self.height, pos,
                 cmd.direction, self.rng, self.fill_code)

    def _cmd_corridors(self, cmd: A.RandomCorridorsCmd) -> None:
        try:
            random_corridors(self.bp.terrain, self.width, self.height,
                             self.rooms, self.rng)
        except CompileError as exc:
            raise LayoutFailure(exc.message, cmd.span.line, cmd.span.column) from None

    def _cmd_room(self, cmd: A.RoomCmd) -> None:
        if self.room_stack:
            raise _span_err("nested ROOM (use SUBROOM)", cmd.span)
        size = (cmd.size.x, cmd.size.y) if isinstance(cmd.size, A.Coord) \
            else random_room_size(self.rng)
        align = (cmd.align.h, cmd.align.v) if isinstance(cmd.align, A.AlignPair) \
            else None
        taken = [r.wall_box() for r in self.rooms]
        try:
            x, y = room_slot(size, align, self.rng, self.width, self.height, taken)
        except PlacementError as exc:
            # crowded layout, not a bad document: resample the whole level
            raise LayoutFailure(exc.message, cmd.span.line, cmd.span.column) from None
        except CompileError as exc:
            raise type(exc)(exc.message, cmd.span.line, cmd.span.column) from None
        lit = {"lit": True, "unlit": False}.get(cmd.lit)
        if lit is None:
            lit = self.rng.chance(50)
        room = PlacedRoom(x, y, size[0], size[1], lit)
        carve_room(self.bp.terrain, self.bp.lit, self.width, room)
        self.rooms.append(room)
        self.room_stack.append(room)
        try:
            for sub in cmd.body:
                self.eval_command(sub)
        finally:
            self.room_stack.pop()

    def _cmd_subroom(self, cmd: A.SubroomCmd) -> None:
        if not self.room_stack:
            raise _span_err("SUBROOM outside a ROOM body", cmd.span)
        parent = self.room_stack[-1]
        if isinstance(cmd.size, A.Coord):
            w, h = cmd.size.x, cmd.size.y
        else:
            if parent.w < 3 or parent.h < 3:
                raise _span_err("parent room too small for a subroom", cmd.span)
            w = self.rng.randint(1, parent.w - 2)
            h = self.rng.randint(1, parent.h - 2)
        if w + 2 > parent.w or h + 2 > parent.h:
            raise _span_err("subroom %dx%d does not fit inside its %dx%d parent"
                            % (w, h, parent.w, parent.h), cmd.span)
        boxes = self.sub_boxes.setdefault(id(parent), [])
        if isinstance(cmd.pos, A.Coord):
            px, py = cmd.pos.x, cmd.pos.y
            if px < 1 or py < 1 or px + w + 1 > parent.w or py + h + 1 > parent.h:
                raise _span_err("subroom at (%d,%d) leaves no wall inside its parent"
                                % (px, py), cmd.span)
        else:
            for attempt in range(PLACE_ATTEMPTS):
                px = self.rng.randint(1, parent.w - w - 1)
                py = self.rng.randint(1, parent.h - h - 1)
                box = (parent.x + px - 1, parent.y + py - 1,
                       parent.x + px + w, parent.y + py + h)
                if not any(_boxes_clash(box, b, gap=0) for b in boxes):
                    break
            else:
                raise PlacementError("no slot for a %dx%d subroom" % (w, h),
                                     cmd.span.line, cmd.span.column)
        sub = PlacedRoom(parent.x + px, parent.y + py, w, h, parent.lit
                         if cmd.lit == "random" else cmd.lit == "lit")
        boxes.append(sub.wall_box())
        carve_room(self.bp.terrain, self.bp.lit, self.width, sub)
        self.room_stack.append(sub)
        try:
            for inner in cmd.body:
                self.eval_command(inner)
        finally:
            self.room_stack.pop()

    def _cmd_roomdoor(self, cmd: A.RoomDoorCmd) -> None:
        if not self.room_stack:
            raise _span_err("ROOMDOOR outside a ROOM body", cmd.span)
        room = self.room_stack[-1]
        wall = cmd.wall
        if wall == "random":
            wall = self.rng.choice(("north", "south", "east", "west"))
        cells = wall_cells(room, wall)
        if isinstance(cmd.pos, A.RandomArg):
            cell = self.rng.choice(cells)
        else:
            idx = min(max(cmd.pos.value, 0), len(cells) - 1)
            cell = cells[idx]
        secret = cmd.secret == "true" or (cmd.secret == "random"
                                          and self.rng.chance(50))
        if secret:
            code = Terrain.SECRET_DOOR
        else:
            state = cmd.state
            if state == "random":
                state = self.rng.choice(("closed", "open"))
            code = _DOOR_STATES[state]
        punch_opening(self.bp.terrain, self.width, room, cell, code)

    def _cmd_door(self, cmd: A.DoorCmd) -> None:
        state = cmd.state
        if state == "random":
            state = self.rng.choice(("closed", "open"))
        pos = self.resolve_place(cmd.place, cmd.span)
        self.set_terrain(pos[0], pos[1], _DOOR_STATES[state])

    def _cmd_monster(self, cmd: A.MonsterCmd) -> None:
        mdef = resolve_monster(cmd.spec, self.rng, self.catalog, self.ctx)
        pos = self.resolve_place(cmd.place, cmd.span)
        hostile = mdef.hostile
        asleep = False
        for arg in cmd.args:
            if arg == "hostile":
                hostile = True
            elif arg == "peaceful":
                hostile = False
            elif arg == "asleep":
                asleep = True
            elif arg == "awake":
                asleep = False
            else:
                raise _span_err("unknown monster flag %r" % arg, cmd.span)
        self.add_placement("monster", mdef.name, mdef.char, pos,
                           hostile=hostile, asleep=asleep)

    def _cmd_object(self, cmd: A.ObjectCmd) -> None:
        odef = resolve_object(cmd.spec, self.rng, self.catalog, self.ctx)
        pos = self.resolve_place(cmd.place, cmd.span)
        quantity = 1
        montype = ""
        for key, value in cmd.extras:
            if key == "quantity":
                quantity = self.eval_int(value)
                if quantity < 1:
                    raise _span_err("object quantity must be positive", cmd.span)
            elif key == "montype":
                montype = value.value
        self.add_placement("object", odef.name, odef.char, pos,
                           quantity=quantity, montype=montype)

    def _cmd_trap(self, cmd: A.TrapCmd) -> None:
        if isinstance(cmd.name, A.RandomArg):
            name = self.rng.choice(RANDOM_TRAPS)
        else:
            name = cmd.name.value
        if name not in TRAP_NAMES:
            raise UnknownEntityError("unknown trap %r" % name,
                                     cmd.span.line, cmd.span.column)
        pos = self.resolve_place(cmd.place, cmd.span)
        self.add_placement("trap", name, "^", pos)

    def _cmd_stair(self, cmd: A.StairCmd) -> None:
        pos = self.resolve_place(cmd.place, cmd.span)
        code = Terrain.STAIR_DOWN if cmd.direction == "down" else Terrain.STAIR_UP
        self.set_terrain(pos[0], pos[1], code)
        self.bp.stairs.append((pos[0], pos[1], cmd.direction))
        self.bp.placements.append(Placement(
            kind="feature", name="staircase %s" % cmd.direction,
            char=">" if cmd.direction == "down" else "<", x=pos[0], y=pos[1]))

    def _cmd_sink(self, cmd: A.SinkCmd) -> None:
        self._feature(cmd.place, cmd.span, Terrain.SINK, "sink", "#")

    def _cmd_fountain(self, cmd: A.FountainCmd) -> None:
        self._feature(cmd.place, cmd.span, Terrain.FOUNTAIN, "fountain", "{")

    def _cmd_altar(self, cmd: A.AltarCmd) -> None:
        self._feature(cmd.place, cmd.span, Terrain.ALTAR, "altar", "_")

    def _feature(self, place, span, code, name, char) -> None:
        pos = self.resolve_place(place, span)
        self.set_terrain(pos[0], pos[1], code)
        self.bp.placements.append(Placement(kind="feature", name=name,
                                            char=char, x=pos[0], y=pos[1]))

    def _cmd_branch(self, cmd: A.BranchCmd) -> None:
        x1, y1, x2, y2 = self.canvas_rect(cmd.rect1)
        x1 = max(x1, 0)
        y1 = max(y1, 0)
        x2 = min(x2, self.width - 1)
        y2 = min(y2, self.height - 1)
        if x2 < x1 or y2 < y1:
            raise _span_err("BRANCH rectangle out of bounds", cmd.span)
        for _ in range(PLACE_ATTEMPTS):
            x = self.rng.randint(x1, x2)
            y = self.rng.randint(y1, y2)
            if WALKABLE[self.terrain_at(x, y)]:
                self.bp.start_pos = (x, y)
                self.occupied.add((x, y))
                return
        raise PlacementError("no walkable start cell in BRANCH rectangle",
                             cmd.span.line, cmd.span.column)

    def _cmd_loop(self, cmd: A.LoopCmd) -> None:
        count = self.eval_int(cmd.count)
        if count < 0:
            raise _span_err("negative loop count", cmd.span)
        for _ in range(count):
            for inner in cmd.body:
                self.eval_command(inner)

    def _cmd_if(self, cmd: A.IfCmd) -> None:
        if eval_condition(cmd.condition, self.ctx):
            for inner in cmd.then_body:
                self.eval_command(inner)
        elif cmd.else_body is not None:
            for inner in cmd.else_body:
                self.eval_command(inner)

    def _cmd_prob(self, cmd: A.ProbStatement) -> None:
        if self.rng.chance(cmd.percent):
            self.eval_command(cmd.inner)

    def _cmd_assign(self, cmd: A.VarAssign) -> None:
        self.ctx.variables[cmd.name] = self.eval_value(cmd.value)

    def eval_value(self, node):
        if isinstance(node, A.ArrayLit):
            items = []
            for item in node.items:
                if isinstance(item, (A.CharLit, A.StrLit)):
                    items.append(item.value)
                elif isinstance(item, A.Coord):
                    items.append((item.x, item.y))
                else:
                    raise _span_err("bad array element", node.span)
            return TaggedList(items, node.tag)
        if isinstance(node, _SELECTION_NODES):
            return Selection(self.eval_selection(node))
        if isinstance(node, A.RndCoord):
            cells = self.eval_selection(node.source)
            if not cells:
                raise _span_err("rndcoord over an empty selection", node.span)
            return CanvasCoord(rndcoord(cells, self.rng))
        if isinstance(node, A.CharLit) or isinstance(node, A.StrLit):
            return node.value
        if isinstance(node, A.Coord):
            return (node.x, node.y)
        return self.eval_int(node)

    def _cmd_shuffle(self, cmd: A.ShuffleCmd) -> None:
        v = lookup_var(cmd.name, self.ctx, cmd.span)
        if not isinstance(v, list):
            raise _span_err("SHUFFLE needs an array, $%s is not one" % cmd.name,
                            cmd.span)
        self.rng.shuffle(v)

    _HANDLERS = {
        A.MapBlock: _cmd_map,
        A.GeometryCmd: _cmd_geometry,
        A.FlagsCmd: _cmd_flags,
        A.RegionCmd: _cmd_region,
        A.TerrainCmd: _cmd_terrain,
        A.ReplaceTerrainCmd: _cmd_replace,
        A.MazewalkCmd: _cmd_mazewalk,
        A.RandomCorridorsCmd: _cmd_corridors,
        A.RoomCmd: _cmd_room,
        A.SubroomCmd: _cmd_subroom,
        A.RoomDoorCmd: _cmd_roomdoor,
        A.DoorCmd: _cmd_door,
        A.MonsterCmd: _cmd_monster,
        A.ObjectCmd: _cmd_object,
        A.TrapCmd: _cmd_trap,
        A.StairCmd: _cmd_stair,
        A.SinkCmd: _cmd_sink,
        A.FountainCmd: _cmd_fountain,
        A.AltarCmd: _cmd_altar,
        A.BranchCmd: _cmd_branch,
        A.LoopCmd: _cmd_loop,
        A.IfCmd: _cmd_if,
        A.ProbStatement: _cmd_prob,
        A.VarAssign: _cmd_assign,
        A.ShuffleCmd: _cmd_shuffle,
    }


def compile_document(source, level_name: str | None = None,
                     seed: int = 0) -> LevelBlueprint:
    """Compile one level of a des document for a given seed."""
    doc = parse_document(source) if isinstance(source, str) else source
    try:
        level = doc.level(level_name)
    except (KeyError, IndexError):
        raise CompileError("no level named %r in document" % level_name) from None
    catalog = get_catalog()
    rng = Rng(derive_seed(seed, text_salt("compile:" + level.name)))
    last_error = None
    for _ in range(LAYOUT_RETRIES):
        try:
            return _Evaluator(level, rng, catalog).run()
        except LayoutFailure as exc:
            last_error = exc
    raise CompileError("room layout failed after %d retries: %s"
                       % (LAYOUT_RETRIES, last_error))
