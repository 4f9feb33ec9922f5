"""Monster and object catalog, loaded from the shipped tsv data files.

Entity names are not hardcoded anywhere else; the compiler resolves every
monster/object reference against this catalog, and `random` draws pick
uniformly from it in file order (order matters for determinism).
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

from .errors import UnknownEntityError

CATALOG_VERSION = 1

# categories that only exist for explicit map furniture; `random` object
# draws and class-only draws never produce them unless the class is theirs
_FURNITURE = ("boulder", "statue", "gold")


@dataclass(frozen=True)
class MonsterDef:
    name: str
    char: str
    hitdice: tuple[int, int]
    damage: tuple[int, int]
    speed: int
    hostile: bool
    instakill: bool
    ranged: bool
    sessile: bool
    nodiag: bool


@dataclass(frozen=True)
class ObjectDef:
    name: str
    char: str
    category: str
    effect: str


def _parse_dice(text: str) -> tuple[int, int]:
    n, _, m = text.partition("d")
    return int(n), int(m)


class Catalog:
    def __init__(self, monsters: list[MonsterDef], objects: list[ObjectDef]):
        self.monsters = monsters
        self.objects = objects
        self.monsters_by_name: dict[str, MonsterDef] = {m.name: m for m in monsters}
        self.monsters_by_char: dict[str, list[MonsterDef]] = {}
        for m in monsters:
            self.monsters_by_char.setdefault(m.char, []).append(m)
        self.objects_by_name: dict[str, list[ObjectDef]] = {}
        self.objects_by_char: dict[str, list[ObjectDef]] = {}
        for o in objects:
            self.objects_by_name.setdefault(o.name, []).append(o)
            self.objects_by_char.setdefault(o.char, []).append(o)
        self.random_objects = [o for o in objects if o.category not in _FURNITURE]

    # -- monsters ----------------------------------------------------------

    def monster(self, name: str) -> MonsterDef:
        try:
            return self.monsters_by_name[name]
        except KeyError:
            raise UnknownEntityError(f"unknown monster {name!r}") from None

    def monster_class(self, char: str) -> list[MonsterDef]:
        defs = self.monsters_by_char.get(char)
        if not defs:
            raise UnknownEntityError(f"no monsters in class {char!r}")
        return defs

    # -- objects -----------------------------------------------------------

    def object(self, name: str, char: str | None = None) -> ObjectDef:
        defs = self.objects_by_name.get(name)
        if not defs:
            raise UnknownEntityError(f"unknown object {name!r}")
        if char is None:
            if len(defs) > 1:
                chars = ", ".join(repr(d.char) for d in defs)
                raise UnknownEntityError(
                    f"object name {name!r} is ambiguous (classes {chars}); give a class char")
            return defs[0]
        for d in defs:
            if d.char == char:
                return d
        raise UnknownEntityError(f"object {name!r} is not in class {char!r}")

    def object_class(self, char: str) -> list[ObjectDef]:
        defs = self.objects_by_char.get(char)
        if not defs:
            raise UnknownEntityError(f"no objects in class {char!r}")
        return defs


def _read_rows(filename: str, n_cols: int) -> list[list[str]]:
    text = importlib.resources.files("gridhack.data").joinpath(filename).read_text("utf-8")
    lines = text.splitlines()
    if not lines or "catalog v1" not in lines[0]:
        raise ValueError(f"{filename}: missing or wrong catalog version header")
    rows = []
    for line in lines:
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.rstrip("\n").split("\t")
        if len(cols) != n_cols:
            raise ValueError(f"{filename}: expected {n_cols} columns, got {len(cols)}: {line!r}")
        rows.append(cols)
    return rows


def _load() -> Catalog:
    monsters = []
    for name, char, hd, dmg, speed, flags in _read_rows("monsters.tsv", 6):
        flagset = [f.strip() for f in flags.split(",") if f.strip()]
        monsters.append(MonsterDef(
            name=name, char=char,
            hitdice=_parse_dice(hd), damage=_parse_dice(dmg), speed=int(speed),
            hostile="peaceful" not in flagset,
            instakill="instakill" in flagset,
            ranged="ranged" in flagset,
            sessile="sessile" in flagset,
            nodiag="nodiag" in flagset,
        ))
    objects = [ObjectDef(name, char, category, effect)
               for name, char, category, effect in _read_rows("objects.tsv", 4)]
    return Catalog(monsters, objects)


_catalog: Catalog | None = None


def get_catalog() -> Catalog:
    global _catalog
    if _catalog is None:
        _catalog = _load()
    return _catalog
