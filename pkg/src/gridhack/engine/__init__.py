"""Turn-based world engine: field of view, agent actions, monster turns."""

from .fov import FovCache, compute_visible, line_of_sight
from .world import (
    AGENT_HP_MAX,
    KICK_DOOR_PROB,
    MOVE_DELTAS,
    OPEN_DOOR_PROB,
    POTION_LEVITATION_TURNS,
    SEARCH_FIND_DIE,
    Monster,
    ObjInstance,
    WorldState,
    all_action_names,
    describe_object,
    reset,
    step,
)

__all__ = [
    "AGENT_HP_MAX",
    "FovCache",
    "KICK_DOOR_PROB",
    "MOVE_DELTAS",
    "Monster",
    "ObjInstance",
    "OPEN_DOOR_PROB",
    "POTION_LEVITATION_TURNS",
    "SEARCH_FIND_DIE",
    "WorldState",
    "all_action_names",
    "compute_visible",
    "describe_object",
    "line_of_sight",
    "reset",
    "step",
]
