"""Seeded des-document compilation into level blueprints."""

from .evaluate import (EvalContext, compile_document, eval_condition,
                       eval_int_expr, replace_terrain, resolve_monster,
                       resolve_object, roll_dice)
from .mazewalk import mazewalk
from .rooms import PlacedRoom, random_corridors
from .selections import rndcoord, sel_fillrect, sel_filter, sel_union, \
    select_randline

__all__ = [
    "EvalContext",
    "PlacedRoom",
    "compile_document",
    "eval_condition",
    "eval_int_expr",
    "mazewalk",
    "random_corridors",
    "replace_terrain",
    "resolve_monster",
    "resolve_object",
    "rndcoord",
    "roll_dice",
    "sel_fillrect",
    "sel_filter",
    "sel_union",
    "select_randline",
]
