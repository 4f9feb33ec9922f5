"""Registry contract: the task list, per-family structure, seed robustness."""

import pytest

from gridhack import engine
from gridhack.errors import MalformedLevel, UnknownTaskError
from gridhack.runtime import EnvSession
from gridhack.tasks import gen_multiroom, list_tasks, load_boxoban, make_task
from gridhack.terrain import Terrain

W = 79

ALL_TASKS = [
    "Boxoban-Hard", "Boxoban-Medium", "Boxoban-Unfiltered", "Corridor-R2",
    "Corridor-R3", "Corridor-R5", "CorridorBattle", "CorridorBattle-Dark",
    "Eat", "Eat-Distract", "Eat-Fixed", "HideNSeek",
    "HideNSeek-Big", "HideNSeek-Lava", "HideNSeek-Mapped", "KeyRoom-Dark-S15",
    "KeyRoom-Dark-S5", "KeyRoom-Fixed-S5", "KeyRoom-S15", "KeyRoom-S5",
    "LavaCross", "LavaCross-Levitate", "LavaCross-Levitate-Potion-Inv",
    "LavaCross-Levitate-Potion-Pickup",
    "LavaCross-Levitate-Ring-Inv", "LavaCross-Levitate-Ring-Pickup",
    "LockedDoor", "LockedDoor-Random",
    "MazeExplore-Easy", "MazeExplore-Easy-Mapped", "MazeExplore-Hard",
    "MazeExplore-Hard-Mapped",
    "MazeWalk-15x15", "MazeWalk-15x15-Mapped", "MazeWalk-45x19",
    "MazeWalk-45x19-Mapped",
    "MazeWalk-9x9", "MazeWalk-9x9-Mapped", "Memento-F2", "Memento-F4",
    "Memento-Short-F2", "MultiRoom-N2", "MultiRoom-N2-Extreme",
    "MultiRoom-N2-Lava",
    "MultiRoom-N2-Locked", "MultiRoom-N2-Monster", "MultiRoom-N4",
    "MultiRoom-N4-Extreme",
    "MultiRoom-N4-Lava", "MultiRoom-N4-Locked", "MultiRoom-N4-Monster", "Pray",
    "Pray-Distract", "Pray-Fixed", "River", "River-Lava",
    "River-Monster", "River-MonsterLava", "River-Narrow", "Room-15x15",
    "Room-15x15-Dark", "Room-15x15-Monster", "Room-15x15-Random",
    "Room-15x15-Trap",
    "Room-15x15-Ultimate", "Room-5x5", "Room-5x5-Dark", "Room-5x5-Monster",
    "Room-5x5-Random", "Room-5x5-Trap", "Room-5x5-Ultimate", "Wear",
    "Wear-Distract", "Wear-Fixed", "WoD-Easy", "WoD-Hard",
    "WoD-Medium", "WoD-Pro",
]


def terrain_counts(bp):
    out = {}
    for c in bp.terrain:
        out[c] = out.get(c, 0) + 1
    return out


def test_registry_lists_exactly_these_tasks():
    assert list_tasks() == ALL_TASKS
    assert len(ALL_TASKS) == 78


def test_unknown_task_raises():
    with pytest.raises(UnknownTaskError):
        make_task("Room-3x3")


def test_every_task_spec_is_well_formed():
    for name in list_tasks():
        spec = make_task(name)
        assert spec.actions, name
        assert spec.max_steps > 0, name
        assert spec.obs_keys, name
        assert len(set(spec.actions)) == len(spec.actions), name


def test_every_task_builds_and_resets_across_seeds():
    # the whole registry must stay robust over a wide public seed range
    for name in list_tasks():
        spec = make_task(name)
        for seed in range(100):
            bp = spec.build(seed)
            st = engine.reset(bp, seed, auto_menus=spec.auto_menus,
                              start_inventory=spec.start_inventory)
            assert 0 <= st.ax < 79 and 0 <= st.ay < 21, (name, seed)


def test_make_task_overrides_do_not_mutate_registry():
    spec = make_task("Room-5x5", max_steps=7)
    assert spec.max_steps == 7
    assert make_task("Room-5x5").max_steps != 7 or spec is not make_task("Room-5x5")


# ---------------------------------------------------------------- families

def test_room_sizes_and_darkness():
    bp = make_task("Room-5x5").build(0)
    # 5x5 walkable cells, one of which is the down staircase
    assert terrain_counts(bp).get(Terrain.FLOOR, 0) + 1 == 25
    assert sum(bp.lit) > 0
    bp = make_task("Room-5x5-Dark").build(0)
    assert not any(bp.lit)
    bp = make_task("Room-15x15").build(3)
    assert terrain_counts(bp).get(Terrain.FLOOR, 0) + 1 == 225


def test_room_random_variant_moves_start_and_stair():
    spec = make_task("Room-5x5-Random")
    starts = set()
    for s in range(12):
        bp = spec.build(s)
        assert bp.start_pos is None  # agent spawns on a random free cell
        st = engine.reset(bp, s)
        starts.add((st.ax, st.ay))
    assert len(starts) > 1
    assert len({spec.build(s).find_stair("down") for s in range(12)}) > 1
    fixed = {tuple(make_task("Room-5x5").build(s).start_pos)
             for s in range(12)}
    assert len(fixed) == 1


def test_room_monster_and_trap_variants_populate():
    bp = make_task("Room-15x15-Monster").build(1)
    assert any(p.kind == "monster" for p in bp.placements)
    bp = make_task("Room-15x15-Trap").build(1)
    assert any(p.kind == "trap" for p in bp.placements)
    bp = make_task("Room-15x15-Ultimate").build(1)
    assert any(p.kind == "monster" for p in bp.placements)
    assert any(p.kind == "trap" for p in bp.placements)
    assert not any(bp.lit)


def test_mapped_variants_differ_only_in_premapping():
    plain = make_task("MazeWalk-9x9")
    mapped = make_task("MazeWalk-9x9-Mapped")
    for seed in (0, 5):
        a = plain.build(seed)
        b = mapped.build(seed)
        assert bytes(a.terrain) == bytes(b.terrain)
        assert not a.premapped and b.premapped


def test_keyroom_structure():
    spec = make_task("KeyRoom-S5")
    for seed in range(10):
        bp = spec.build(seed)
        counts = terrain_counts(bp)
        assert counts.get(Terrain.LOCKED_DOOR, 0) == 1
        keys = [p for p in bp.placements if p.kind == "object"
                and p.name in ("skeleton key", "lock pick")]
        assert len(keys) == 1
        assert bp.find_stair("down") is not None
    assert "apply" in spec.actions


def test_river_has_water_and_start_on_left_bank():
    spec = make_task("River")
    for seed in range(5):
        bp = spec.build(seed)
        counts = terrain_counts(bp)
        assert counts.get(Terrain.WATER, 0) >= 10
        boulders = [p for p in bp.placements if p.name == "boulder"]
        assert len(boulders) >= 3
        sx, sy = bp.start_pos
        assert sx < min(p.x for p in bp.placements if p.name == "boulder")
    bp = make_task("River-Lava").build(0)
    assert terrain_counts(bp).get(Terrain.LAVA, 0) >= 10
    assert make_task("River-Lava").start_inventory == ((("levitation", "!"),))


def test_river_monster_variants_add_monsters():
    bp = make_task("River-Monster").build(2)
    assert any(p.kind == "monster" for p in bp.placements)
    assert not any(p.kind == "monster"
                   for p in make_task("River").build(2).placements)


def test_hidenseek_monsters_and_trees():
    spec = make_task("HideNSeek")
    bp = spec.build(4)
    counts = terrain_counts(bp)
    assert counts.get(Terrain.TREE, 0) + counts.get(Terrain.CLOUD, 0) >= 5
    mons = [p for p in bp.placements if p.kind == "monster"]
    assert len(mons) == 1


def test_memento_variants_have_invisible_trap_cue():
    for name in ("Memento-Short-F2", "Memento-F2", "Memento-F4"):
        bp = make_task(name).build(0)
        traps = [p for p in bp.placements if p.kind == "trap"]
        assert any(t.name == "invisible" for t in traps), name
        sleepers = [p for p in bp.placements
                    if p.kind == "monster" and p.asleep]
        assert sleepers, name


def test_corridor_battle_spawns_rats():
    bp = make_task("CorridorBattle").build(0)
    rats = [p for p in bp.placements if p.kind == "monster"]
    assert len(rats) == 8


def test_skill_task_inventories():
    assert make_task("Eat").start_inventory == ("apple",)
    assert make_task("Wear").start_inventory == ("robe",)
    assert make_task("WoD-Easy").start_inventory == ("death",)
    assert make_task("WoD-Medium").start_inventory == ()
    assert make_task("LavaCross-Levitate-Ring-Inv").start_inventory == \
        ((("levitation", "="),))
    assert make_task("LavaCross-Levitate-Potion-Inv").start_inventory == \
        ((("levitation", "!"),))


def test_eat_fixed_floor_apple():
    bp = make_task("Eat-Fixed").build(0)
    apples = [p for p in bp.placements
              if p.kind == "object" and p.name == "apple"]
    assert len(apples) == 1
    assert bp.start_pos is not None


def test_pray_tasks_have_altar():
    for name in ("Pray", "Pray-Fixed", "Pray-Distract"):
        bp = make_task(name).build(1)
        assert terrain_counts(bp).get(Terrain.ALTAR, 0) >= 1, name


def test_locked_door_tasks():
    fixed = {terrain_counts(make_task("LockedDoor").build(s)).get(
        Terrain.LOCKED_DOOR, 0) for s in range(5)}
    assert fixed == {1}
    doors = set()
    for s in range(15):
        bp = make_task("LockedDoor-Random").build(s)
        for i, c in enumerate(bp.terrain):
            if c == Terrain.LOCKED_DOOR:
                doors.add(i)
    assert len(doors) > 1  # the random variant moves the door between seeds


def test_wod_tasks_place_minotaur():
    for name in ("WoD-Easy", "WoD-Medium", "WoD-Hard", "WoD-Pro"):
        bp = make_task(name).build(2)
        minos = [p for p in bp.placements if p.name == "minotaur"]
        assert len(minos) == 1, name
        asleep = name in ("WoD-Easy", "WoD-Medium")
        assert minos[0].asleep == asleep, name


def test_wod_medium_wand_on_floor():
    bp = make_task("WoD-Medium").build(0)
    wands = [p for p in bp.placements
             if p.kind == "object" and p.name == "death"]
    assert len(wands) == 1


# ---------------------------------------------------------------- multiroom

def test_gen_multiroom_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gen_multiroom(3)
    with pytest.raises(ValueError):
        gen_multiroom(2, room_size=1)
    with pytest.raises(ValueError):
        gen_multiroom(2, variant="haunted")


def test_gen_multiroom_des_compiles_with_doors():
    from gridhack.compiler.evaluate import compile_document
    gen = gen_multiroom(4, variant="locked")
    for seed in range(5):
        bp = compile_document(gen(seed), seed=seed)
        counts = terrain_counts(bp)
        doors = sum(counts.get(c, 0) for c in (
            Terrain.CLOSED_DOOR, Terrain.LOCKED_DOOR, Terrain.OPEN_DOOR))
        assert doors == 3  # one shared door per adjacent room pair
        assert counts.get(Terrain.LOCKED_DOOR, 0) >= 1
        assert bp.find_stair("down") is not None


def test_multiroom_lava_walls():
    bp = make_task("MultiRoom-N2-Lava").build(1)
    assert terrain_counts(bp).get(Terrain.LAVA, 0) > 0


def test_multiroom_monster_variant_spawns():
    bp = make_task("MultiRoom-N4-Monster").build(3)
    assert any(p.kind == "monster" for p in bp.placements)


# ---------------------------------------------------------------- boxoban

GOOD_LEVEL = (
    "; 0\n"
    "##########\n"
    "#@       #\n"
    "# $    . #\n"
    "#  $  .  #\n"
    "#        #\n"
    "#    #   #\n"
    "# .$   $.#\n"
    "#        #\n"
    "#        #\n"
    "##########\n"
)


def test_load_boxoban_parses_players_boxes_goals():
    levels = load_boxoban(GOOD_LEVEL)
    assert len(levels) == 1
    bp = levels[0]
    boulders = [p for p in bp.placements if p.name == "boulder"]
    assert len(boulders) == 4
    fountains = sum(1 for c in bp.terrain if c == Terrain.FOUNTAIN)
    assert fountains == 4
    assert bp.start_pos is not None


def test_load_boxoban_accepts_overlap_markers():
    # * is a box already on a goal, + the player on a goal
    text = (
        "; 0\n"
        "##########\n"
        "#+       #\n"
        "# $    . #\n"
        "#  $     #\n"
        "#        #\n"
        "#    #   #\n"
        "# .$   * #\n"
        "#        #\n"
        "#        #\n"
        "##########\n"
    )
    bp = load_boxoban(text)[0]
    boulders = [p for p in bp.placements if p.name == "boulder"]
    assert len(boulders) == 4
    assert sum(1 for c in bp.terrain if c == Terrain.FOUNTAIN) == 4


@pytest.mark.parametrize("mutate,fragment", [
    (lambda t: t.replace("#@       #\n", ""), "rows"),
    (lambda t: t.replace("#@       #", "#@       ##"), "chars"),
    (lambda t: t.replace("$", "?", 1), "character"),
    (lambda t: t.replace("@", " "), "player"),
    (lambda t: t.replace("#        #\n#        #", "#@       #\n#        #"),
     "player"),
    (lambda t: t.replace("$", " "), "box"),
    (lambda t: t.replace(".", " ", 1), "goal"),
])
def test_load_boxoban_rejects_malformed(mutate, fragment):
    with pytest.raises(MalformedLevel) as err:
        load_boxoban(mutate(GOOD_LEVEL))
    assert err.value.index == 0


def test_boxoban_task_indexes_levels_by_seed():
    spec = make_task("Boxoban-Unfiltered")
    a = spec.build(0)
    b = spec.build(1)
    assert bytes(a.terrain) != bytes(b.terrain) or a.placements != b.placements
    again = spec.build(0)
    assert bytes(a.terrain) == bytes(again.terrain)


def test_boxoban_episode_runs_with_cardinal_actions():
    sess = EnvSession("Boxoban-Medium", seed=3)
    sess.reset(seed=3)
    assert sess.actions == ("N", "S", "E", "W")
    obs, r, done, info = sess.step("N")
    assert "message" in obs or "chars" in obs
