"""Pretty-printer: turn a DesDocument back into parseable des source.

Canonical layout (4-space indent, single spaces after commas); re-parsing the
output yields a tree structurally equal to the input.
"""

from __future__ import annotations

from . import ast


def _int_expr(e) -> str:
    if isinstance(e, ast.IntLit):
        return str(e.value)
    if isinstance(e, ast.DiceRoll):
        return f"{e.count}d{e.sides}"
    if isinstance(e, ast.VarRef):
        return f"${e.name}"
    if isinstance(e, ast.IndexedVar):
        return f"${e.name}[{_int_expr(e.index)}]"
    if isinstance(e, ast.BinOp):
        return f"{_int_expr(e.lhs)} {e.op} {_int_expr(e.rhs)}"
    raise TypeError(f"not an int expr: {e!r}")


def _selection(sel) -> str:
    if isinstance(sel, ast.FillRect):
        return f"fillrect ({sel.x1},{sel.y1},{sel.x2},{sel.y2})"
    if isinstance(sel, ast.RandLine):
        return f"randline ({sel.x1},{sel.y1}),({sel.x2},{sel.y2}),{sel.roughness}"
    if isinstance(sel, ast.FilterSel):
        return f"filter({sel.percent}%, {_selection(sel.inner)})"
    if isinstance(sel, ast.UnionSel):
        return "union(" + ", ".join(_selection(p) for p in sel.parts) + ")"
    if isinstance(sel, (ast.VarRef, ast.IndexedVar)):
        return _int_expr(sel)
    raise TypeError(f"not a selection: {sel!r}")


def _coord(c) -> str:
    if isinstance(c, ast.Coord):
        return f"({c.x},{c.y})"
    if isinstance(c, ast.RandomArg):
        return "random"
    if isinstance(c, ast.RndCoord):
        return f"rndcoord {_selection(c.source)}"
    if isinstance(c, (ast.VarRef, ast.IndexedVar)):
        return _int_expr(c)
    raise TypeError(f"not a coordinate: {c!r}")


def _char(c) -> str:
    if isinstance(c, ast.CharLit):
        return f"'{c.value}'"
    if isinstance(c, (ast.VarRef, ast.IndexedVar)):
        return _int_expr(c)
    raise TypeError(f"not a char expr: {c!r}")


def _spec_part(p) -> str:
    if isinstance(p, str):
        return repr_part(p)
    return _int_expr(p)


def repr_part(value: str) -> str:
    # single char → char literal, longer → string literal
    return f"'{value}'" if len(value) == 1 else f'"{value}"'


def _entity_spec(spec: ast.EntitySpec) -> str:
    if spec.random:
        return "random"
    if spec.char is not None and spec.name is not None:
        left = f"'{spec.char}'" if isinstance(spec.char, str) else _int_expr(spec.char)
        right = f'"{spec.name}"' if isinstance(spec.name, str) else _int_expr(spec.name)
        return f"({left},{right})"
    if spec.char is not None:
        return f"'{spec.char}'" if isinstance(spec.char, str) else _int_expr(spec.char)
    return f'"{spec.name}"' if isinstance(spec.name, str) else _int_expr(spec.name)


def _value(v) -> str:
    if isinstance(v, ast.ArrayLit):
        items = ",".join(_array_item(i) for i in v.items)
        prefix = f"{v.tag}: " if v.tag else ""
        return prefix + "{ " + items + " }"
    if isinstance(v, (ast.FillRect, ast.RandLine, ast.FilterSel, ast.UnionSel)):
        return f"selection: {_selection(v)}"
    if isinstance(v, ast.RndCoord):
        return f"rndcoord {_selection(v.source)}"
    if isinstance(v, ast.CharLit):
        return f"'{v.value}'"
    if isinstance(v, ast.StrLit):
        return f'"{v.value}"'
    if isinstance(v, ast.Coord):
        return f"({v.x},{v.y})"
    return _int_expr(v)


def _array_item(i) -> str:
    if isinstance(i, ast.CharLit):
        return f"'{i.value}'"
    if isinstance(i, ast.StrLit):
        return f'"{i.value}"'
    if isinstance(i, ast.Coord):
        return f"({i.x},{i.y})"
    raise TypeError(f"bad array item: {i!r}")


def _rect(r: ast.Rect) -> str:
    return f"({r.x1},{r.y1},{r.x2},{r.y2})"


def _trap_name(n) -> str:
    if isinstance(n, ast.RandomArg):
        return "random"
    if isinstance(n, ast.CharLit):
        return f"'{n.value}'"
    return f'"{n.value}"'


def _pos_or_random(p) -> str:
    if isinstance(p, ast.RandomArg):
        return "random"
    if isinstance(p, ast.Coord):
        return f"({p.x},{p.y})"
    if isinstance(p, ast.AlignPair):
        return f"({p.h},{p.v})"
    if isinstance(p, ast.IntLit):
        return str(p.value)
    raise TypeError(f"bad position: {p!r}")


def _command(cmd, out: list, indent: int) -> None:
    pad = "    " * indent

    def emit(text: str) -> None:
        out.append(pad + text)

    if isinstance(cmd, ast.MapBlock):
        emit("MAP")
        out.extend(cmd.rows)  # rows verbatim, never indented
        emit("ENDMAP")
    elif isinstance(cmd, ast.GeometryCmd):
        emit(f"GEOMETRY:{cmd.halign},{cmd.valign}")
    elif isinstance(cmd, ast.FlagsCmd):
        emit("FLAGS:" + ",".join(cmd.flags))
    elif isinstance(cmd, ast.RegionCmd):
        emit(f'REGION:{_rect(cmd.rect)},{cmd.lit},"{cmd.rtype}"')
    elif isinstance(cmd, ast.TerrainCmd):
        if isinstance(cmd.target, (ast.FillRect, ast.RandLine, ast.FilterSel, ast.UnionSel)):
            target = _selection(cmd.target)
        else:
            target = _coord(cmd.target)
        emit(f"TERRAIN:{target},{_char(cmd.char)}")
    elif isinstance(cmd, ast.ReplaceTerrainCmd):
        emit(f"REPLACE_TERRAIN:{_rect(cmd.rect)},'{cmd.from_char}','{cmd.to_char}',"
             f"{_int_expr(cmd.percent)}%")
    elif isinstance(cmd, ast.MazewalkCmd):
        emit(f"MAZEWALK:{_coord(cmd.coord)},{cmd.direction}")
    elif isinstance(cmd, ast.RandomCorridorsCmd):
        emit("RANDOM_CORRIDORS")
    elif isinstance(cmd, ast.RoomCmd):
        emit(f'ROOM:"{cmd.rtype}",{cmd.lit},{_pos_or_random(cmd.pos)},'
             f"{_pos_or_random(cmd.align)},{_pos_or_random(cmd.size)} {{")
        for c in cmd.body:
            _command(c, out, indent + 1)
        emit("}")
    elif isinstance(cmd, ast.SubroomCmd):
        emit(f'SUBROOM:"{cmd.rtype}",{cmd.lit},{_pos_or_random(cmd.pos)},'
             f"{_pos_or_random(cmd.size)} {{")
        for c in cmd.body:
            _command(c, out, indent + 1)
        emit("}")
    elif isinstance(cmd, ast.RoomDoorCmd):
        emit(f"ROOMDOOR:{cmd.secret},{cmd.state},{cmd.wall},{_pos_or_random(cmd.pos)}")
    elif isinstance(cmd, ast.DoorCmd):
        emit(f"DOOR:{cmd.state},{_coord(cmd.place)}")
    elif isinstance(cmd, ast.MonsterCmd):
        line = f"MONSTER:{_entity_spec(cmd.spec)},{_coord(cmd.place)}"
        for a in cmd.args:
            line += f",{a}"
        emit(line)
    elif isinstance(cmd, ast.ObjectCmd):
        line = f"OBJECT:{_entity_spec(cmd.spec)},{_coord(cmd.place)}"
        for kind, v in cmd.extras:
            if kind == "montype":
                line += f",montype:'{v.value}'"
            elif kind == "quantity":
                line += f",{_int_expr(v)}"
            else:
                line += f",{v}"
        emit(line)
    elif isinstance(cmd, ast.TrapCmd):
        emit(f"TRAP:{_trap_name(cmd.name)},{_coord(cmd.place)}")
    elif isinstance(cmd, ast.StairCmd):
        emit(f"STAIR:{_coord(cmd.place)},{cmd.direction}")
    elif isinstance(cmd, ast.SinkCmd):
        emit(f"SINK:{_coord(cmd.place)}")
    elif isinstance(cmd, ast.FountainCmd):
        emit(f"FOUNTAIN:{_coord(cmd.place)}")
    elif isinstance(cmd, ast.AltarCmd):
        line = f"ALTAR:{_coord(cmd.place)}"
        if cmd.align:
            line += f",{cmd.align}"
        if cmd.atype:
            line += f",{cmd.atype}"
        emit(line)
    elif isinstance(cmd, ast.BranchCmd):
        emit(f"BRANCH:{_rect(cmd.rect1)},{_rect(cmd.rect2)}")
    elif isinstance(cmd, ast.LoopCmd):
        emit(f"LOOP [{_int_expr(cmd.count)}] {{")
        for c in cmd.body:
            _command(c, out, indent + 1)
        emit("}")
    elif isinstance(cmd, ast.IfCmd):
        if isinstance(cmd.condition, ast.PercentCond):
            cond = f"{cmd.condition.percent}%"
        else:
            cond = (f"{_int_expr(cmd.condition.lhs)} {cmd.condition.op} "
                    f"{_int_expr(cmd.condition.rhs)}")
        emit(f"IF[{cond}] {{")
        for c in cmd.then_body:
            _command(c, out, indent + 1)
        if cmd.else_body is not None:
            emit("} ELSE {")
            for c in cmd.else_body:
                _command(c, out, indent + 1)
        emit("}")
    elif isinstance(cmd, ast.VarAssign):
        emit(f"${cmd.name} = {_value(cmd.value)}")
    elif isinstance(cmd, ast.ShuffleCmd):
        emit(f"SHUFFLE: ${cmd.name}")
    elif isinstance(cmd, ast.ProbStatement):
        inner: list = []
        _command(cmd.inner, inner, 0)
        emit(f"[{cmd.percent}%] {inner[0]}")
        for line in inner[1:]:
            out.append(pad + line)
    else:
        raise TypeError(f"unknown command node: {cmd!r}")


def to_des(doc: ast.DesDocument) -> str:
    out: list[str] = []
    for lvl in doc.levels:
        if lvl.kind == ast.MAZE_TYPE:
            out.append(f'MAZE:"{lvl.name}",\'{lvl.fill}\'')
        else:
            out.append(f'LEVEL:"{lvl.name}"')
        for cmd in lvl.commands:
            _command(cmd, out, 0)
    return "\n".join(out) + "\n"
