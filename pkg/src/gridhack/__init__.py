"""gridhack: procedurally generated roguelike gridworld environments.

Levels are written in a des-file dialect (or built programmatically), compiled
with seeded randomness into concrete blueprints, and simulated turn by turn
with symbolic observations and declarative event-based rewards.
"""

__version__ = "0.1.0"

from .dsl import parse_document, to_des
from .errors import (CompileError, DesSyntaxError, EngineError, GridhackError,
                     PlacementError, UnknownEntityError, UnknownTaskError)

__all__ = [
    "__version__",
    "parse_document", "to_des",
    "GridhackError", "DesSyntaxError", "CompileError", "PlacementError",
    "UnknownEntityError", "EngineError", "UnknownTaskError",
]
