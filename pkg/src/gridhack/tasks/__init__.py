"""Named task registry: stable ids mapping to environment specs."""

from .boxoban import load_boxoban
from .ported import gen_multiroom
from .registry import (
    CARDINAL_ACTIONS,
    DEFAULT_OBS_KEYS,
    DIR_ACTIONS,
    NAV_ACTIONS,
    EnvSpec,
    list_tasks,
    make_task,
    register,
)

__all__ = [
    "CARDINAL_ACTIONS",
    "DEFAULT_OBS_KEYS",
    "DIR_ACTIONS",
    "NAV_ACTIONS",
    "EnvSpec",
    "gen_multiroom",
    "list_tasks",
    "load_boxoban",
    "make_task",
    "register",
]
