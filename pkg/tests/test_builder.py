"""LevelBuilder emits compilable source mirroring its directives."""

import pytest

from gridhack.builder import LevelBuilder, OutOfBounds
from gridhack.compiler.evaluate import compile_document
from gridhack.terrain import Terrain


def test_empty_room_compiles_to_floor_rect():
    des = LevelBuilder.new(5, 4).get_des()
    bp = compile_document(des, seed=0)
    floors = sum(1 for c in bp.terrain if c == Terrain.FLOOR)
    assert floors == 5 * 4


def test_directive_chain_round_trips_through_compile():
    b = (LevelBuilder.new(7, 7, name="combo")
         .add_object("apple", "%", place=(1, 1))
         .add_monster("bat", place=(2, 2), args=("asleep",))
         .add_trap("teleport", place=(3, 3))
         .add_fountain((4, 4))
         .add_altar((5, 5))
         .set_start_pos((0, 0))
         .add_goal_pos((6, 6)))
    bp = compile_document(b.get_des(), seed=1)
    # map is centered; recover the offset from the start position
    ox, oy = bp.start_pos
    kinds = {(p.kind, p.name): (p.x - ox, p.y - oy) for p in bp.placements}
    assert kinds[("object", "apple")] == (1, 1)
    assert kinds[("monster", "bat")] == (2, 2)
    assert kinds[("trap", "teleport")] == (3, 3)
    assert bp.terrain_at(ox + 4, oy + 4) == Terrain.FOUNTAIN
    assert bp.terrain_at(ox + 5, oy + 5) == Terrain.ALTAR
    assert bp.find_stair("down") == (ox + 6, oy + 6)
    mon = next(p for p in bp.placements if p.kind == "monster")
    assert mon.asleep


def test_from_map_strips_blank_margins():
    b = LevelBuilder.from_map("""

-----
|...|
-----

""")
    assert b.height == 3
    assert b.width == 5
    bp = compile_document(b.get_des(), seed=0)
    assert sum(1 for c in bp.terrain if c == Terrain.FLOOR) == 3


def test_unlit_room_is_dark():
    bp = compile_document(LevelBuilder.new(4, 4, lit=False).get_des(), seed=0)
    assert not any(bp.lit)
    bp = compile_document(LevelBuilder.new(4, 4, lit=True).get_des(), seed=0)
    assert sum(bp.lit) == 16


def test_flags_pass_through():
    des = LevelBuilder.new(3, 3, flags=("premapped",)).get_des()
    assert compile_document(des, seed=0).premapped


def test_monster_name_lookup_fills_class_char():
    des = LevelBuilder.new(4, 4).add_monster("minotaur", place=(1, 1)).get_des()
    assert "('H\',\"minotaur\")" in des.replace("( ", "(")
    bp = compile_document(des, seed=0)
    mon = next(p for p in bp.placements if p.kind == "monster")
    assert mon.char == "H"


def test_fill_terrain_shapes():
    b = LevelBuilder.new(6, 6)
    b.fill_terrain("fillrect", "L", 1, 1, 2, 2)
    b.fill_terrain("rect", "W", 3, 3, 5, 5)
    bp = compile_document(b.get_des(), seed=0)
    ox = (79 - 6) // 2
    oy = (21 - 6) // 2
    assert bp.terrain_at(ox + 1, oy + 1) == Terrain.LAVA
    assert bp.terrain_at(ox + 2, oy + 2) == Terrain.LAVA
    # rect outlines without filling the middle
    assert bp.terrain_at(ox + 3, oy + 3) == Terrain.WATER
    assert bp.terrain_at(ox + 5, oy + 4) == Terrain.WATER
    assert bp.terrain_at(ox + 4, oy + 4) == Terrain.FLOOR


def test_out_of_bounds_rejected_at_build_time():
    b = LevelBuilder.new(4, 4)
    with pytest.raises(OutOfBounds):
        b.add_object("apple", "%", place=(4, 0))
    with pytest.raises(OutOfBounds):
        b.set_start_pos((0, 9))


def test_quantity_and_random_placement():
    des = (LevelBuilder.new(5, 5)
           .add_object("gold piece", "$", quantity=60)
           .get_des())
    bp = compile_document(des, seed=3)
    gold = next(p for p in bp.placements if p.kind == "object")
    assert gold.quantity == 60
    ox = (79 - 5) // 2
    oy = (21 - 5) // 2
    assert ox <= gold.x < ox + 5 and oy <= gold.y < oy + 5


def test_emitted_source_always_parses():
    des = (LevelBuilder.new(9, 9)
           .add_line("LOOP [3] {")
           .add_line("    OBJECT: '%', random")
           .add_line("}")
           .get_des())
    bp = compile_document(des, seed=0)
    assert sum(1 for p in bp.placements if p.kind == "object") == 3
