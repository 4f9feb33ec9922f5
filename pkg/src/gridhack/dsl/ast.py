"""Abstract syntax tree for des-file programs.

Every node carries a SourceSpan so later stages can anchor errors to the
source text.  Spans are excluded from equality so structural comparison
(round-trip tests, printers) ignores layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True)
class SourceSpan:
    line: int = 1      # 1-based
    column: int = 1    # 1-based
    length: int = 1


_NO_SPAN = SourceSpan()


def _span_field():
    return field(default=_NO_SPAN, compare=False, repr=False)


# --------------------------------------------------------------------------
# expressions

@dataclass(frozen=True)
class IntLit:
    value: int
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class DiceRoll:
    count: int
    sides: int
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class VarRef:
    name: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class IndexedVar:
    name: str
    index: "IntExpr"
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class BinOp:
    op: str  # '+' or '-'
    lhs: "IntExpr"
    rhs: "IntExpr"
    span: SourceSpan = _span_field()


IntExpr = Union[IntLit, DiceRoll, VarRef, IndexedVar, BinOp]


@dataclass(frozen=True)
class CharLit:
    # single-quoted literal; normally one char, but trap names like 'fire'
    # also use single quotes, so longer values are legal here
    value: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class StrLit:
    value: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class Coord:
    x: int
    y: int
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class RandomArg:
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class Rect:
    x1: int
    y1: int
    x2: int
    y2: int
    span: SourceSpan = _span_field()

    def __post_init__(self):
        if self.x1 > self.x2 or self.y1 > self.y2:
            xa, xb = sorted((self.x1, self.x2))
            ya, yb = sorted((self.y1, self.y2))
            object.__setattr__(self, "x1", xa)
            object.__setattr__(self, "x2", xb)
            object.__setattr__(self, "y1", ya)
            object.__setattr__(self, "y2", yb)


@dataclass(frozen=True)
class FillRect:
    x1: int
    y1: int
    x2: int
    y2: int
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class RandLine:
    x1: int
    y1: int
    x2: int
    y2: int
    roughness: int
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class FilterSel:
    percent: int
    inner: "SelectionExpr"
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class UnionSel:
    parts: tuple
    span: SourceSpan = _span_field()


SelectionExpr = Union[FillRect, RandLine, FilterSel, UnionSel, VarRef]


@dataclass(frozen=True)
class RndCoord:
    source: Union[SelectionExpr, VarRef]
    span: SourceSpan = _span_field()


CoordExpr = Union[Coord, RandomArg, RndCoord, VarRef, IndexedVar]


@dataclass(frozen=True)
class ArrayLit:
    tag: Optional[str]  # "monster" | "object" | "TERRAIN" | None
    items: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class EntitySpec:
    """Monster/object specification: random, class char, name, or both."""
    char: object = None  # str | VarRef | IndexedVar | None
    name: object = None  # str | VarRef | IndexedVar | None
    random: bool = False
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class PercentCond:
    percent: int
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class CompareCond:
    lhs: IntExpr
    op: str  # < <= > >= == !=
    rhs: IntExpr
    span: SourceSpan = _span_field()


CondExpr = Union[PercentCond, CompareCond]


@dataclass(frozen=True)
class AlignPair:
    h: str
    v: str
    span: SourceSpan = _span_field()


# --------------------------------------------------------------------------
# commands

@dataclass(frozen=True)
class MapBlock:
    rows: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class GeometryCmd:
    halign: str
    valign: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class FlagsCmd:
    flags: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class RegionCmd:
    rect: Rect
    lit: str  # lit | unlit | random
    rtype: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class TerrainCmd:
    target: object  # CoordExpr | SelectionExpr
    char: object    # CharLit | VarRef | IndexedVar
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class ReplaceTerrainCmd:
    rect: Rect
    from_char: str
    to_char: str
    percent: IntExpr
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class MazewalkCmd:
    coord: CoordExpr
    direction: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class RandomCorridorsCmd:
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class RoomCmd:
    rtype: str
    lit: str
    pos: object    # Coord | RandomArg
    align: object  # AlignPair | RandomArg
    size: object   # Coord | RandomArg
    body: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class SubroomCmd:
    rtype: str
    lit: str
    pos: object
    size: object
    body: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class RoomDoorCmd:
    secret: str  # true | false | random
    state: str   # nodoor | open | closed | locked | random
    wall: str    # north | south | east | west | random
    pos: object  # IntLit | RandomArg
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class DoorCmd:
    state: str
    place: CoordExpr
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class MonsterCmd:
    spec: EntitySpec
    place: CoordExpr
    args: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class ObjectCmd:
    spec: EntitySpec
    place: CoordExpr
    extras: tuple  # of ("montype", CharLit) | ("quantity", IntExpr) | ("flag", str)
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class TrapCmd:
    name: object  # CharLit | StrLit | RandomArg
    place: CoordExpr
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class StairCmd:
    place: CoordExpr
    direction: str  # up | down
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class SinkCmd:
    place: CoordExpr
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class FountainCmd:
    place: CoordExpr
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class AltarCmd:
    place: CoordExpr
    align: Optional[str]
    atype: Optional[str]
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class BranchCmd:
    rect1: Rect
    rect2: Rect
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class LoopCmd:
    count: IntExpr
    body: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class IfCmd:
    condition: CondExpr
    then_body: tuple
    else_body: Optional[tuple]
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class VarAssign:
    name: str
    value: object  # IntExpr | ArrayLit | SelectionExpr | RndCoord | CharLit | StrLit | Coord
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class ShuffleCmd:
    name: str
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class ProbStatement:
    percent: int
    inner: object  # Command
    span: SourceSpan = _span_field()


Command = Union[
    MapBlock, GeometryCmd, RegionCmd, TerrainCmd, ReplaceTerrainCmd, MazewalkCmd,
    RandomCorridorsCmd, RoomCmd, SubroomCmd, RoomDoorCmd, DoorCmd, MonsterCmd,
    ObjectCmd, TrapCmd, StairCmd, SinkCmd, FountainCmd, AltarCmd, BranchCmd,
    LoopCmd, IfCmd, VarAssign, ShuffleCmd, ProbStatement,
]


# --------------------------------------------------------------------------
# document

MAZE_TYPE = "maze"
ROOM_TYPE = "room"


@dataclass(frozen=True)
class LevelDecl:
    kind: str  # MAZE_TYPE | ROOM_TYPE
    name: str
    fill: Optional[str]  # fill char for maze-type levels
    commands: tuple
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class DesDocument:
    levels: tuple

    def level(self, name: Optional[str] = None) -> LevelDecl:
        if name is None:
            return self.levels[0]
        for lvl in self.levels:
            if lvl.name == name:
                return lvl
        raise KeyError(name)
