"""Recursive-descent parser for des-file source.

One command per line; MAP...ENDMAP captures raw rows; LOOP/IF/ROOM bodies are
brace-delimited blocks.  A document with no MAZE/LEVEL header is a MAZE-type
level named "mylevel" with floor fill.
"""

from __future__ import annotations

from ..errors import DesSyntaxError
from . import ast
from .lexer import Token, TokType, tokenize

_H_ALIGNS = ("left", "half-left", "center", "half-right", "right")
_V_ALIGNS = ("top", "center", "bottom")
_DIRECTIONS = ("north", "south", "east", "west")
_DOOR_STATES = ("nodoor", "open", "closed", "locked", "random")
_WALLS = ("north", "south", "east", "west", "random")
_ARRAY_TAGS = ("TERRAIN", "terrain", "monster", "object")
_SELECTION_WORDS = ("fillrect", "randline", "filter", "union")

IMPLICIT_LEVEL_NAME = "mylevel"
IMPLICIT_FILL = "."


class _Stream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def eof(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self, ahead: int = 0) -> Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            raise DesSyntaxError("unexpected end of input", line, 1)
        self.pos += 1
        return t

    def at_word(self, value: str) -> bool:
        t = self.peek()
        return t is not None and t.type is TokType.WORD and t.value == value

    def at_punct(self, value: str) -> bool:
        t = self.peek()
        return t is not None and t.type is TokType.PUNCT and t.value == value

    def expect_punct(self, value: str) -> Token:
        t = self.next()
        if t.type is not TokType.PUNCT or t.value != value:
            raise DesSyntaxError(f"expected {value!r}, found {_show(t)}", t.line, t.column)
        return t

    def expect_word(self, value: str | None = None) -> Token:
        t = self.next()
        if t.type is not TokType.WORD or (value is not None and t.value != value):
            what = repr(value) if value else "a word"
            raise DesSyntaxError(f"expected {what}, found {_show(t)}", t.line, t.column)
        return t

    def expect_type(self, type_: TokType, what: str) -> Token:
        t = self.next()
        if t.type is not type_:
            raise DesSyntaxError(f"expected {what}, found {_show(t)}", t.line, t.column)
        return t

    def end_line(self) -> None:
        if self.eof():
            return
        t = self.next()
        if t.type is not TokType.NEWLINE:
            raise DesSyntaxError(f"expected end of line, found {_show(t)}", t.line, t.column)

    def skip_newlines(self) -> None:
        while not self.eof() and self.peek().type is TokType.NEWLINE:
            self.pos += 1


def _show(t: Token) -> str:
    if t.type is TokType.NEWLINE:
        return "end of line"
    return repr(t.value)


# --------------------------------------------------------------------------
# expressions

def _parse_int_primary(s: _Stream) -> ast.IntExpr:
    t = s.next()
    if t.type is TokType.INT:
        return ast.IntLit(t.value, span=t.span)
    if t.type is TokType.DICE:
        n, m = t.value
        if n < 1 or m < 1:
            raise DesSyntaxError("dice require at least 1 die with 1 side", t.line, t.column)
        return ast.DiceRoll(n, m, span=t.span)
    if t.type is TokType.VAR:
        return _maybe_indexed(s, t)
    raise DesSyntaxError(f"expected integer expression, found {_show(t)}", t.line, t.column)


def _parse_int_expr(s: _Stream) -> ast.IntExpr:
    expr = _parse_int_primary(s)
    while s.at_punct("+") or s.at_punct("-"):
        op = s.next()
        rhs = _parse_int_primary(s)
        expr = ast.BinOp(op.value, expr, rhs, span=op.span)
    return expr


def _maybe_indexed(s: _Stream, var_tok: Token):
    if s.at_punct("["):
        s.next()
        index = _parse_int_expr(s)
        s.expect_punct("]")
        return ast.IndexedVar(var_tok.value, index, span=var_tok.span)
    return ast.VarRef(var_tok.value, span=var_tok.span)


def _parse_coord_pair(s: _Stream) -> ast.Coord:
    lp = s.expect_punct("(")
    x = s.expect_type(TokType.INT, "x coordinate").value
    s.expect_punct(",")
    y = s.expect_type(TokType.INT, "y coordinate").value
    s.expect_punct(")")
    return ast.Coord(x, y, span=lp.span)


def _parse_rect(s: _Stream) -> ast.Rect:
    lp = s.expect_punct("(")
    vals = []
    for i in range(4):
        vals.append(s.expect_type(TokType.INT, "rect coordinate").value)
        if i < 3:
            s.expect_punct(",")
    s.expect_punct(")")
    return ast.Rect(*vals, span=lp.span)


def _parse_selection(s: _Stream) -> object:
    t = s.peek()
    if t.type is TokType.VAR:
        return _maybe_indexed(s, s.next())
    if t.type is not TokType.WORD:
        raise DesSyntaxError(f"expected a selection, found {_show(t)}", t.line, t.column)
    if t.value == "fillrect":
        s.next()
        r = s.expect_punct("(")
        vals = []
        for i in range(4):
            vals.append(s.expect_type(TokType.INT, "fillrect coordinate").value)
            if i < 3:
                s.expect_punct(",")
        s.expect_punct(")")
        return ast.FillRect(*vals, span=t.span)
    if t.value == "randline":
        s.next()
        p1 = _parse_coord_pair(s)
        s.expect_punct(",")
        p2 = _parse_coord_pair(s)
        s.expect_punct(",")
        rough = s.expect_type(TokType.INT, "roughness").value
        return ast.RandLine(p1.x, p1.y, p2.x, p2.y, rough, span=t.span)
    if t.value == "filter":
        s.next()
        s.expect_punct("(")
        pct = s.expect_type(TokType.INT, "percent").value
        s.expect_punct("%")
        s.expect_punct(",")
        inner = _parse_selection(s)
        s.expect_punct(")")
        return ast.FilterSel(pct, inner, span=t.span)
    if t.value == "union":
        s.next()
        s.expect_punct("(")
        parts = [_parse_selection(s)]
        while s.at_punct(","):
            s.next()
            parts.append(_parse_selection(s))
        s.expect_punct(")")
        return ast.UnionSel(tuple(parts), span=t.span)
    raise DesSyntaxError(f"expected a selection, found {_show(t)}", t.line, t.column)


def _parse_coord_expr(s: _Stream) -> object:
    t = s.peek()
    if t is None:
        raise DesSyntaxError("expected a position", 0, 0)
    if t.type is TokType.PUNCT and t.value == "(":
        return _parse_coord_pair(s)
    if t.type is TokType.VAR:
        return _maybe_indexed(s, s.next())
    if t.type is TokType.WORD:
        if t.value == "random":
            s.next()
            return ast.RandomArg(span=t.span)
        if t.value == "rndcoord":
            s.next()
            return ast.RndCoord(_parse_selection(s), span=t.span)
    raise DesSyntaxError(f"expected a position, found {_show(t)}", t.line, t.column)


def _parse_char_expr(s: _Stream) -> object:
    t = s.next()
    if t.type is TokType.CHARSTR:
        if len(t.value) != 1:
            raise DesSyntaxError("terrain char must be a single character", t.line, t.column)
        return ast.CharLit(t.value, span=t.span)
    if t.type is TokType.VAR:
        return _maybe_indexed(s, t)
    raise DesSyntaxError(f"expected a terrain char, found {_show(t)}", t.line, t.column)


def _parse_entity_spec(s: _Stream) -> ast.EntitySpec:
    t = s.peek()
    if t.type is TokType.WORD and t.value == "random":
        s.next()
        return ast.EntitySpec(random=True, span=t.span)
    if t.type is TokType.CHARSTR:
        s.next()
        return ast.EntitySpec(char=t.value, span=t.span)
    if t.type is TokType.STRING:
        s.next()
        return ast.EntitySpec(name=t.value, span=t.span)
    if t.type is TokType.VAR:
        return ast.EntitySpec(char=_maybe_indexed(s, s.next()), span=t.span)
    if t.type is TokType.PUNCT and t.value == "(":
        s.next()
        char = _parse_spec_part(s, "class char")
        s.expect_punct(",")
        name = _parse_spec_part(s, "name")
        s.expect_punct(")")
        return ast.EntitySpec(char=char, name=name, span=t.span)
    raise DesSyntaxError(f"expected a monster/object spec, found {_show(t)}", t.line, t.column)


def _parse_spec_part(s: _Stream, what: str):
    t = s.next()
    if t.type is TokType.CHARSTR or t.type is TokType.STRING:
        return t.value
    if t.type is TokType.VAR:
        return _maybe_indexed(s, t)
    raise DesSyntaxError(f"expected {what}, found {_show(t)}", t.line, t.column)


def _parse_condition(s: _Stream) -> object:
    t = s.peek()
    nxt = s.peek(1)
    if (t.type is TokType.INT and nxt is not None
            and nxt.type is TokType.PUNCT and nxt.value == "%"):
        s.next()
        s.next()
        return ast.PercentCond(t.value, span=t.span)
    lhs = _parse_int_expr(s)
    op = s.next()
    if op.type is not TokType.PUNCT or op.value not in ("<", "<=", ">", ">=", "==", "!="):
        raise DesSyntaxError(f"expected comparison operator, found {_show(op)}",
                             op.line, op.column)
    rhs = _parse_int_expr(s)
    return ast.CompareCond(lhs, op.value, rhs, span=t.span)


# --------------------------------------------------------------------------
# commands

def _parse_map(s: _Stream) -> ast.MapBlock:
    t = s.expect_word("MAP")
    s.end_line()
    rows = []
    while not s.eof() and s.peek().type is TokType.MAPROW:
        rows.append(s.next().value)
    s.expect_word("ENDMAP")
    s.end_line()
    if not rows:
        raise DesSyntaxError("empty MAP block", t.line, t.column)
    return ast.MapBlock(tuple(rows), span=t.span)


def _parse_geometry(s: _Stream) -> ast.GeometryCmd:
    t = s.expect_word("GEOMETRY")
    s.expect_punct(":")
    h = s.expect_word().value
    s.expect_punct(",")
    v = s.expect_word().value
    if h not in _H_ALIGNS or v not in _V_ALIGNS:
        raise DesSyntaxError(f"bad alignment {h},{v}", t.line, t.column)
    s.end_line()
    return ast.GeometryCmd(h, v, span=t.span)


_LEVEL_FLAGS = ("premapped", "hardfloor", "nommap", "noteleport", "shortsighted")


def _parse_flags(s: _Stream) -> ast.FlagsCmd:
    t = s.expect_word("FLAGS")
    s.expect_punct(":")
    flags = [s.expect_word().value]
    while s.at_punct(","):
        s.next()
        flags.append(s.expect_word().value)
    for flag in flags:
        if flag not in _LEVEL_FLAGS:
            raise DesSyntaxError(f"unknown level flag {flag!r}", t.line, t.column)
    s.end_line()
    return ast.FlagsCmd(tuple(flags), span=t.span)


def _parse_region(s: _Stream) -> ast.RegionCmd:
    t = s.expect_word("REGION")
    s.expect_punct(":")
    rect = _parse_rect(s)
    s.expect_punct(",")
    lit = s.expect_word().value
    if lit not in ("lit", "unlit", "random"):
        raise DesSyntaxError(f"bad lighting {lit!r}", t.line, t.column)
    s.expect_punct(",")
    rtype = s.expect_type(TokType.STRING, "region type").value
    s.end_line()
    return ast.RegionCmd(rect, lit, rtype, span=t.span)


def _parse_terrain(s: _Stream) -> ast.TerrainCmd:
    t = s.expect_word("TERRAIN")
    s.expect_punct(":")
    p = s.peek()
    if p.type is TokType.WORD and p.value in _SELECTION_WORDS:
        target = _parse_selection(s)
    else:
        target = _parse_coord_expr(s)
    s.expect_punct(",")
    char = _parse_char_expr(s)
    s.end_line()
    return ast.TerrainCmd(target, char, span=t.span)


def _parse_replace_terrain(s: _Stream) -> ast.ReplaceTerrainCmd:
    t = s.expect_word("REPLACE_TERRAIN")
    s.expect_punct(":")
    rect = _parse_rect(s)
    s.expect_punct(",")
    frm = s.expect_type(TokType.CHARSTR, "terrain char")
    s.expect_punct(",")
    to = s.expect_type(TokType.CHARSTR, "terrain char")
    s.expect_punct(",")
    pct = _parse_int_expr(s)
    s.expect_punct("%")
    s.end_line()
    if len(frm.value) != 1 or len(to.value) != 1:
        raise DesSyntaxError("terrain char must be a single character", t.line, t.column)
    return ast.ReplaceTerrainCmd(rect, frm.value, to.value, pct, span=t.span)


def _parse_mazewalk(s: _Stream) -> ast.MazewalkCmd:
    t = s.expect_word("MAZEWALK")
    s.expect_punct(":")
    coord = _parse_coord_expr(s)
    s.expect_punct(",")
    d = s.expect_word().value
    if d not in _DIRECTIONS:
        raise DesSyntaxError(f"bad direction {d!r}", t.line, t.column)
    s.end_line()
    return ast.MazewalkCmd(coord, d, span=t.span)


def _parse_random_corridors(s: _Stream) -> ast.RandomCorridorsCmd:
    t = s.expect_word("RANDOM_CORRIDORS")
    s.end_line()
    return ast.RandomCorridorsCmd(span=t.span)


def _parse_lit_word(s: _Stream) -> str:
    t = s.expect_word()
    if t.value not in ("lit", "unlit", "random"):
        raise DesSyntaxError(f"bad lighting {t.value!r}", t.line, t.column)
    return t.value


def _parse_coord_or_random(s: _Stream) -> object:
    t = s.peek()
    if t.type is TokType.WORD and t.value == "random":
        s.next()
        return ast.RandomArg(span=t.span)
    return _parse_coord_pair(s)


def _parse_room(s: _Stream) -> ast.RoomCmd:
    t = s.expect_word("ROOM")
    s.expect_punct(":")
    rtype = s.expect_type(TokType.STRING, "room type").value
    s.expect_punct(",")
    lit = _parse_lit_word(s)
    s.expect_punct(",")
    pos = _parse_coord_or_random(s)
    s.expect_punct(",")
    align = _parse_align(s)
    s.expect_punct(",")
    size = _parse_coord_or_random(s)
    body = _parse_block(s)
    s.end_line()
    return ast.RoomCmd(rtype, lit, pos, align, size, body, span=t.span)


def _parse_align(s: _Stream) -> object:
    t = s.peek()
    if t.type is TokType.WORD and t.value == "random":
        s.next()
        return ast.RandomArg(span=t.span)
    lp = s.expect_punct("(")
    h = s.expect_word().value
    s.expect_punct(",")
    v = s.expect_word().value
    s.expect_punct(")")
    if h not in _H_ALIGNS or v not in _V_ALIGNS:
        raise DesSyntaxError(f"bad alignment {h},{v}", lp.line, lp.column)
    return ast.AlignPair(h, v, span=lp.span)


def _parse_subroom(s: _Stream) -> ast.SubroomCmd:
    t = s.expect_word("SUBROOM")
    s.expect_punct(":")
    rtype = s.expect_type(TokType.STRING, "room type").value
    s.expect_punct(",")
    lit = _parse_lit_word(s)
    s.expect_punct(",")
    pos = _parse_coord_or_random(s)
    s.expect_punct(",")
    size = _parse_coord_or_random(s)
    body = _parse_block(s)
    s.end_line()
    return ast.SubroomCmd(rtype, lit, pos, size, body, span=t.span)


def _parse_roomdoor(s: _Stream) -> ast.RoomDoorCmd:
    t = s.expect_word("ROOMDOOR")
    s.expect_punct(":")
    secret = s.expect_word().value
    if secret not in ("true", "false", "random"):
        raise DesSyntaxError(f"bad secret flag {secret!r}", t.line, t.column)
    s.expect_punct(",")
    state = s.expect_word().value
    if state not in _DOOR_STATES:
        raise DesSyntaxError(f"bad door state {state!r}", t.line, t.column)
    s.expect_punct(",")
    wall = s.expect_word().value
    if wall not in _WALLS:
        raise DesSyntaxError(f"bad wall {wall!r}", t.line, t.column)
    s.expect_punct(",")
    p = s.peek()
    if p.type is TokType.WORD and p.value == "random":
        s.next()
        pos = ast.RandomArg(span=p.span)
    else:
        pos = ast.IntLit(s.expect_type(TokType.INT, "door position").value, span=p.span)
    s.end_line()
    return ast.RoomDoorCmd(secret, state, wall, pos, span=t.span)


def _parse_door(s: _Stream) -> ast.DoorCmd:
    t = s.expect_word("DOOR")
    s.expect_punct(":")
    state = s.expect_word().value
    if state not in _DOOR_STATES:
        raise DesSyntaxError(f"bad door state {state!r}", t.line, t.column)
    s.expect_punct(",")
    place = _parse_coord_expr(s)
    s.end_line()
    return ast.DoorCmd(state, place, span=t.span)


def _parse_monster(s: _Stream) -> ast.MonsterCmd:
    t = s.expect_word("MONSTER")
    s.expect_punct(":")
    spec = _parse_entity_spec(s)
    s.expect_punct(",")
    place = _parse_coord_expr(s)
    args = []
    while s.at_punct(","):
        s.next()
        args.append(s.expect_word().value)
    s.end_line()
    return ast.MonsterCmd(spec, place, tuple(args), span=t.span)


def _parse_object(s: _Stream) -> ast.ObjectCmd:
    t = s.expect_word("OBJECT")
    s.expect_punct(":")
    spec = _parse_entity_spec(s)
    s.expect_punct(",")
    place = _parse_coord_expr(s)
    extras = []
    while s.at_punct(","):
        s.next()
        p = s.peek()
        if p.type is TokType.WORD and p.value == "montype":
            s.next()
            s.expect_punct(":")
            ch = s.expect_type(TokType.CHARSTR, "monster class char")
            extras.append(("montype", ast.CharLit(ch.value, span=ch.span)))
        elif p.type is TokType.INT or p.type is TokType.DICE:
            extras.append(("quantity", _parse_int_expr(s)))
        else:
            extras.append(("flag", s.expect_word().value))
    s.end_line()
    return ast.ObjectCmd(spec, place, tuple(extras), span=t.span)


def _parse_trap(s: _Stream) -> ast.TrapCmd:
    t = s.expect_word("TRAP")
    s.expect_punct(":")
    p = s.peek()
    if p.type is TokType.WORD and p.value == "random":
        s.next()
        name = ast.RandomArg(span=p.span)
    elif p.type is TokType.CHARSTR:
        s.next()
        name = ast.CharLit(p.value, span=p.span)
    elif p.type is TokType.STRING:
        s.next()
        name = ast.StrLit(p.value, span=p.span)
    else:
        raise DesSyntaxError(f"expected a trap name, found {_show(p)}", p.line, p.column)
    s.expect_punct(",")
    place = _parse_coord_expr(s)
    s.end_line()
    return ast.TrapCmd(name, place, span=t.span)


def _parse_stair(s: _Stream) -> ast.StairCmd:
    t = s.expect_word("STAIR")
    s.expect_punct(":")
    place = _parse_coord_expr(s)
    s.expect_punct(",")
    d = s.expect_word().value
    if d not in ("up", "down"):
        raise DesSyntaxError(f"bad stair direction {d!r}", t.line, t.column)
    s.end_line()
    return ast.StairCmd(place, d, span=t.span)


def _parse_sink(s: _Stream) -> ast.SinkCmd:
    t = s.expect_word("SINK")
    s.expect_punct(":")
    place = _parse_coord_expr(s)
    s.end_line()
    return ast.SinkCmd(place, span=t.span)


def _parse_fountain(s: _Stream) -> ast.FountainCmd:
    t = s.expect_word("FOUNTAIN")
    s.expect_punct(":")
    place = _parse_coord_expr(s)
    s.end_line()
    return ast.FountainCmd(place, span=t.span)


def _parse_altar(s: _Stream) -> ast.AltarCmd:
    t = s.expect_word("ALTAR")
    s.expect_punct(":")
    place = _parse_coord_expr(s)
    align = atype = None
    if s.at_punct(","):
        s.next()
        align = s.expect_word().value
    if s.at_punct(","):
        s.next()
        atype = s.expect_word().value
    s.end_line()
    return ast.AltarCmd(place, align, atype, span=t.span)


def _parse_branch(s: _Stream) -> ast.BranchCmd:
    t = s.expect_word("BRANCH")
    s.expect_punct(":")
    r1 = _parse_rect(s)
    s.expect_punct(",")
    r2 = _parse_rect(s)
    s.end_line()
    return ast.BranchCmd(r1, r2, span=t.span)


def _parse_loop(s: _Stream) -> ast.LoopCmd:
    t = s.expect_word("LOOP")
    s.expect_punct("[")
    count = _parse_int_expr(s)
    s.expect_punct("]")
    body = _parse_block(s)
    s.end_line()
    return ast.LoopCmd(count, body, span=t.span)


def _parse_if(s: _Stream) -> ast.IfCmd:
    t = s.expect_word("IF")
    s.expect_punct("[")
    cond = _parse_condition(s)
    s.expect_punct("]")
    then_body = _parse_block(s)
    else_body = None
    if s.at_word("ELSE"):
        s.next()
        else_body = _parse_block(s)
    s.end_line()
    return ast.IfCmd(cond, then_body, else_body, span=t.span)


def _parse_shuffle(s: _Stream) -> ast.ShuffleCmd:
    t = s.expect_word("SHUFFLE")
    s.expect_punct(":")
    var = s.expect_type(TokType.VAR, "a $variable")
    s.end_line()
    return ast.ShuffleCmd(var.value, span=t.span)


def _parse_assignment(s: _Stream) -> ast.VarAssign:
    var = s.expect_type(TokType.VAR, "a $variable")
    s.expect_punct("=")
    value = _parse_value(s)
    s.end_line()
    return ast.VarAssign(var.value, value, span=var.span)


def _parse_value(s: _Stream) -> object:
    t = s.peek()
    if t.type is TokType.WORD:
        if t.value in _ARRAY_TAGS:
            tag = s.next().value
            s.expect_punct(":")
            return _parse_array(s, tag)
        if t.value == "selection":
            s.next()
            s.expect_punct(":")
            return _parse_selection(s)
        if t.value == "rndcoord":
            s.next()
            return ast.RndCoord(_parse_selection(s), span=t.span)
        if t.value in _SELECTION_WORDS:
            return _parse_selection(s)
        raise DesSyntaxError(f"expected a value, found {_show(t)}", t.line, t.column)
    if t.type is TokType.PUNCT and t.value == "{":
        return _parse_array(s, None)
    if t.type is TokType.CHARSTR:
        s.next()
        return ast.CharLit(t.value, span=t.span)
    if t.type is TokType.STRING:
        s.next()
        return ast.StrLit(t.value, span=t.span)
    if t.type is TokType.PUNCT and t.value == "(":
        return _parse_coord_pair(s)
    return _parse_int_expr(s)


def _parse_array(s: _Stream, tag: str | None) -> ast.ArrayLit:
    lb = s.expect_punct("{")
    items = []
    while True:
        t = s.peek()
        if t is None:
            raise DesSyntaxError("unterminated array literal", lb.line, lb.column)
        if t.type is TokType.PUNCT and t.value == "}":
            s.next()
            break
        if items:
            s.expect_punct(",")
            t = s.peek()
        if t.type is TokType.CHARSTR:
            s.next()
            items.append(ast.CharLit(t.value, span=t.span))
        elif t.type is TokType.STRING:
            s.next()
            items.append(ast.StrLit(t.value, span=t.span))
        elif t.type is TokType.PUNCT and t.value == "(":
            items.append(_parse_coord_pair(s))
        else:
            raise DesSyntaxError(f"bad array element {_show(t)}", t.line, t.column)
    if not items:
        raise DesSyntaxError("empty array literal", lb.line, lb.column)
    return ast.ArrayLit(tag, tuple(items), span=lb.span)


def _parse_prob_statement(s: _Stream) -> ast.ProbStatement:
    lb = s.expect_punct("[")
    pct = s.expect_type(TokType.INT, "percent").value
    s.expect_punct("%")
    s.expect_punct("]")
    inner = _parse_command(s)
    return ast.ProbStatement(pct, inner, span=lb.span)


def _parse_block(s: _Stream) -> tuple:
    s.expect_punct("{")
    s.end_line()
    body = []
    while True:
        s.skip_newlines()
        if s.eof():
            raise DesSyntaxError("unterminated block (missing '}')",
                                 s.tokens[-1].line if s.tokens else 1, 1)
        if s.at_punct("}"):
            s.next()
            return tuple(body)
        body.append(_parse_command(s))


_COMMANDS = {
    "MAP": _parse_map,
    "GEOMETRY": _parse_geometry,
    "FLAGS": _parse_flags,
    "REGION": _parse_region,
    "TERRAIN": _parse_terrain,
    "REPLACE_TERRAIN": _parse_replace_terrain,
    "MAZEWALK": _parse_mazewalk,
    "RANDOM_CORRIDORS": _parse_random_corridors,
    "ROOM": _parse_room,
    "SUBROOM": _parse_subroom,
    "ROOMDOOR": _parse_roomdoor,
    "DOOR": _parse_door,
    "MONSTER": _parse_monster,
    "OBJECT": _parse_object,
    "TRAP": _parse_trap,
    "STAIR": _parse_stair,
    "SINK": _parse_sink,
    "FOUNTAIN": _parse_fountain,
    "ALTAR": _parse_altar,
    "BRANCH": _parse_branch,
    "LOOP": _parse_loop,
    "IF": _parse_if,
    "SHUFFLE": _parse_shuffle,
}


def _parse_command(s: _Stream) -> object:
    t = s.peek()
    if t.type is TokType.VAR:
        return _parse_assignment(s)
    if t.type is TokType.PUNCT and t.value == "[":
        return _parse_prob_statement(s)
    if t.type is TokType.WORD:
        fn = _COMMANDS.get(t.value)
        if fn is None:
            raise DesSyntaxError(f"unknown command {t.value!r}", t.line, t.column)
        return fn(s)
    raise DesSyntaxError(f"expected a command, found {_show(t)}", t.line, t.column)


# --------------------------------------------------------------------------
# documents

def parse_document(source: str) -> ast.DesDocument:
    s = _Stream(tokenize(source))
    levels: list[ast.LevelDecl] = []
    current: dict | None = None

    def finish():
        nonlocal current
        if current is not None:
            levels.append(ast.LevelDecl(
                current["kind"], current["name"], current["fill"],
                tuple(current["commands"]), span=current["span"]))
            current = None

    while True:
        s.skip_newlines()
        if s.eof():
            break
        t = s.peek()
        if t.type is TokType.WORD and t.value == "MAZE":
            finish()
            s.next()
            s.expect_punct(":")
            name = s.expect_type(TokType.STRING, "level name").value
            s.expect_punct(",")
            fill = s.expect_type(TokType.CHARSTR, "fill char")
            if len(fill.value) != 1:
                raise DesSyntaxError("fill char must be a single character",
                                     fill.line, fill.column)
            s.end_line()
            current = {"kind": ast.MAZE_TYPE, "name": name, "fill": fill.value,
                       "commands": [], "span": t.span}
            continue
        if t.type is TokType.WORD and t.value == "LEVEL":
            finish()
            s.next()
            s.expect_punct(":")
            name = s.expect_type(TokType.STRING, "level name").value
            s.end_line()
            current = {"kind": ast.ROOM_TYPE, "name": name, "fill": None,
                       "commands": [], "span": t.span}
            continue
        if current is None:
            current = {"kind": ast.MAZE_TYPE, "name": IMPLICIT_LEVEL_NAME,
                       "fill": IMPLICIT_FILL, "commands": [], "span": t.span}
        current["commands"].append(_parse_command(s))
    finish()

    if not levels:
        raise DesSyntaxError("empty document: no levels and no commands")
    names = [lvl.name for lvl in levels]
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise DesSyntaxError(f"duplicate level name {dup!r}")
    for lvl in levels:
        maps = [c for c in lvl.commands if isinstance(c, ast.MapBlock)]
        if lvl.kind == ast.ROOM_TYPE and maps:
            raise DesSyntaxError("MAP block not allowed in a ROOM-type level",
                                 maps[0].span.line, maps[0].span.column)
        if len(maps) > 1:
            raise DesSyntaxError("multiple MAP blocks in one level",
                                 maps[1].span.line, maps[1].span.column)
    return ast.DesDocument(tuple(levels))
