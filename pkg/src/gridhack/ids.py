"""Dense entity-id enumeration shared by the display grids and observations.

Ids are assigned in a fixed order so that every build of the package agrees
with the shipped ``data/ids.tsv``: terrain kinds first (their id equals the
terrain code, so SOLID shares id 0 with "nothing"), then every catalog
monster in file order, then every catalog object in file order, then the
trap kinds, and the agent last.
"""

from __future__ import annotations

from .catalog import get_catalog
from .terrain import DISPLAY_CHAR, DISPLAY_COLOR, N_TERRAIN, Terrain

TRAP_KINDS = ("teleport", "invisible", "fire")

MONSTER_BASE = N_TERRAIN


def _build() -> tuple[list[tuple[int, str, str, str]], dict[str, int], dict[str, int], dict[str, int], int]:
    cat = get_catalog()
    rows: list[tuple[int, str, str, str]] = []
    for code in range(N_TERRAIN):
        rows.append((code, "terrain", Terrain(code).name.lower(), DISPLAY_CHAR[code]))
    monster_ids: dict[str, int] = {}
    next_id = N_TERRAIN
    for mon in cat.monsters:
        monster_ids[mon.name] = next_id
        rows.append((next_id, "monster", mon.name, mon.char))
        next_id += 1
    object_ids: dict[str, int] = {}
    for obj in cat.objects:
        # potion/ring share the name "levitation"; key object ids by name+char
        object_ids[obj.name + obj.char] = next_id
        rows.append((next_id, "object", obj.name, obj.char))
        next_id += 1
    trap_ids: dict[str, int] = {}
    for kind in TRAP_KINDS:
        trap_ids[kind] = next_id
        rows.append((next_id, "trap", kind + " trap", "^"))
        next_id += 1
    agent_id = next_id
    rows.append((agent_id, "agent", "agent", "@"))
    return rows, monster_ids, object_ids, trap_ids, agent_id


ID_ROWS, MONSTER_IDS, OBJECT_IDS, TRAP_IDS, AGENT_ID = _build()
MAX_ENTITY_ID = AGENT_ID


def monster_id(name: str) -> int:
    return MONSTER_IDS[name]


def object_id(name: str, char: str) -> int:
    return OBJECT_IDS[name + char]


def entity_color(char: str) -> int:
    """Stable display color in 1..14 for a monster/object class char."""
    return (ord(char) * 131) % 14 + 1


AGENT_COLOR = 15
TRAP_COLOR = 5

TERRAIN_COLOR = DISPLAY_COLOR


def ids_tsv_text() -> str:
    lines = ["# gridhack entity ids v1", "# columns: id\tkind\tname\tchar"]
    for eid, kind, name, char in ID_ROWS:
        lines.append(f"{eid}\t{kind}\t{name}\t{char}")
    lines.append(f"# MAX_ENTITY_ID={MAX_ENTITY_ID}")
    return "\n".join(lines) + "\n"


def write_ids_tsv(path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(ids_tsv_text())
