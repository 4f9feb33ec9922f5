"""Gym-style bindings over a gridhack engine subprocess."""

from .client import (EngineCrashed, EnvClient, IllegalAction, ProtocolError,
                     make)

__all__ = ["EngineCrashed", "EnvClient", "IllegalAction", "ProtocolError",
           "make"]
