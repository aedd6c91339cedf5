"""Glottal source estimation benchmark on synthetic speech."""

from ._core import *  # noqa: F401,F403
from ._core import GlotbenchError

METHODS = ("zzt", "iaif", "acdr_speech", "acdr_iaif")

__all__ = [name for name in dir() if not name.startswith("_")]
